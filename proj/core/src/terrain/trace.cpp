#include "scoutnav/terrain/trace.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace scoutnav::terrain {

void ProbeGeometry::validate() const {
  if (!(area_cm2 > 0.0)) throw InvalidInput("probe area must be positive");
  if (!(max_depth_cm > 0.0)) throw InvalidInput("probe max depth must be positive");
  if (!(depth_step_cm > 0.0) || depth_step_cm > max_depth_cm) {
    throw InvalidInput("probe depth step must lie in (0, max_depth]");
  }
  if (!(descent_speed_cm_s > 0.0)) throw InvalidInput("probe descent speed must be positive");
}

ForceDepthTrace::ForceDepthTrace(std::vector<ForceSample> samples, ProbeGeometry probe,
                                 Vec2 world_position)
    : samples_(std::move(samples)), probe_(probe), world_position_(world_position) {
  if (samples_.size() < 2) {
    throw InvalidInput("a force-depth trace needs at least two samples");
  }
  if (samples_.front().depth_cm != 0.0) {
    throw InvalidInput("a force-depth trace must start at zero depth");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& s = samples_[i];
    if (!std::isfinite(s.depth_cm) || !std::isfinite(s.force_n)) {
      throw InvalidInput("non-finite trace sample");
    }
    if (i > 0 && s.depth_cm < samples_[i - 1].depth_cm) {
      throw InvalidInput("trace depths must be non-decreasing");
    }
  }
}

ForceDepthTrace synthesize_trace(double alpha_z, const ProbeGeometry& probe, double noise_std,
                                 const std::optional<CrustSpec>& crust, std::uint64_t seed,
                                 Vec2 world_position) {
  probe.validate();
  if (!(noise_std >= 0.0)) {
    throw InvalidInput("noise standard deviation must be non-negative");
  }
  const auto steps = static_cast<std::size_t>(std::llround(probe.max_depth_cm / probe.depth_step_cm));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);

  std::vector<ForceSample> samples;
  samples.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    const double z = static_cast<double>(k) * probe.depth_step_cm;
    double f = probe.area_cm2 * alpha_z * z;
    if (crust && z >= crust->top_cm && z <= crust->bottom_cm) {
      f += crust->plateau_n;
    }
    if (noise_std > 0.0) {
      f += noise_std * noise(rng);
    }
    samples.push_back({z, std::max(0.0, f)});
  }
  return ForceDepthTrace(std::move(samples), probe, world_position);
}

ForceDepthTrace synthesize_trace(const ResistanceField& field, Vec2 p, const ProbeGeometry& probe,
                                 double noise_std, const std::optional<CrustSpec>& crust,
                                 std::uint64_t seed) {
  return synthesize_trace(sample_resistance(field, p), probe, noise_std, crust, seed, p);
}

}  // namespace scoutnav::terrain
