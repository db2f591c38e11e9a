#include "scoutnav/proprioception/ground_plane.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "scoutnav/errors.hpp"

namespace scoutnav::proprioception {

GroundPlane estimate_ground_plane(std::span<const Vec3> support_toes) {
  if (support_toes.size() < 3) {
    throw InvalidInput("ground plane needs at least three support toes");
  }
  const auto n = static_cast<double>(support_toes.size());
  Vec3 centroid{};
  for (const auto& p : support_toes) centroid = centroid + p;
  centroid = centroid * (1.0 / n);

  // Centered normal equations for the slopes (b, c); the intercept follows
  // from the centroid.
  Eigen::Matrix2d ata = Eigen::Matrix2d::Zero();
  Eigen::Vector2d atz = Eigen::Vector2d::Zero();
  for (const auto& p : support_toes) {
    const Eigen::Vector2d d(p.x - centroid.x, p.y - centroid.y);
    ata += d * d.transpose();
    atz += d * (p.z - centroid.z);
  }
  const double scale = ata.trace();
  if (!(scale > 0.0) || ata.determinant() <= 1e-12 * scale * scale) {
    throw InvalidInput("support toes are collinear in plan view");
  }
  const Eigen::Vector2d slope = ata.ldlt().solve(atz);

  Vec3 normal{-slope.x(), -slope.y(), 1.0};
  normal = normal * (1.0 / norm(normal));
  return {centroid, normal};
}

double depth_normal_to_plane(Vec3 toe, const GroundPlane& plane) {
  return -dot(toe - plane.point, plane.normal) * 100.0;
}

}  // namespace scoutnav::proprioception
