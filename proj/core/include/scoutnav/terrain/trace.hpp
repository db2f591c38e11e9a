#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "scoutnav/geometry.hpp"
#include "scoutnav/terrain/resistance_field.hpp"

namespace scoutnav::terrain {

/// Intruder geometry of a probing toe.
struct ProbeGeometry {
  double area_cm2 = 5.0;             ///< projected contact-patch area A
  double max_depth_cm = 4.0;
  double descent_speed_cm_s = 1.0;
  double depth_step_cm = 0.1;        ///< sampling interval of synthesized traces

  void validate() const;
};

struct ForceSample {
  double depth_cm = 0.0;
  double force_n = 0.0;

  friend constexpr bool operator==(ForceSample, ForceSample) = default;
};

/// A vertical force-depth record of one probing step.
class ForceDepthTrace {
 public:
  /// Throws InvalidInput unless depths are non-decreasing, start at zero, and
  /// there are at least two samples.
  ForceDepthTrace(std::vector<ForceSample> samples, ProbeGeometry probe, Vec2 world_position = {});

  std::span<const ForceSample> samples() const { return samples_; }
  const ProbeGeometry& probe() const { return probe_; }
  Vec2 world_position() const { return world_position_; }

 private:
  std::vector<ForceSample> samples_;
  ProbeGeometry probe_;
  Vec2 world_position_;
};

/// Additive force plateau over a depth band, breaking instantly at its bottom.
struct CrustSpec {
  double plateau_n = 3.0;
  double top_cm = 0.5;
  double bottom_cm = 1.5;
};

/// Trace for a known resistance: f = A * alpha_z * z (+ crust) + N(0, noise_std^2),
/// clamped at zero.  Deterministic for a fixed seed.
ForceDepthTrace synthesize_trace(double alpha_z, const ProbeGeometry& probe, double noise_std,
                                 const std::optional<CrustSpec>& crust, std::uint64_t seed,
                                 Vec2 world_position = {});

/// Samples the ground truth at `p` (nearest cell) and synthesizes its trace.
ForceDepthTrace synthesize_trace(const ResistanceField& field, Vec2 p, const ProbeGeometry& probe,
                                 double noise_std, const std::optional<CrustSpec>& crust,
                                 std::uint64_t seed);

}  // namespace scoutnav::terrain
