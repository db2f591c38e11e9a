#pragma once

#include <span>

#include "scoutnav/geometry.hpp"

namespace scoutnav::proprioception {

/// Local support surface under the robot.  `normal` is unit length with a
/// positive z component.
struct GroundPlane {
  Vec3 point;
  Vec3 normal{0.0, 0.0, 1.0};
};

/// Least-squares plane z = a + b x + c y through the non-penetrating toes.
/// Throws InvalidInput for fewer than three points or points collinear in plan view.
GroundPlane estimate_ground_plane(std::span<const Vec3> support_toes);

/// Signed distance of the toe below the plane, in centimetres (world units are metres).
double depth_normal_to_plane(Vec3 toe, const GroundPlane& plane);

}  // namespace scoutnav::proprioception
