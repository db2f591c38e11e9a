#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "scoutnav/proprioception/step_log.hpp"
#include "scoutnav/terrain/resistance_field.hpp"
#include "scoutnav/terrain/trace.hpp"

namespace scoutnav::mission {

/// Axis-aligned patch where the probe meets a brittle crust.
struct CrustZone {
  Vec2 lo;
  Vec2 hi;
  terrain::CrustSpec crust;
};

struct GroundTruth {
  terrain::ResistanceField field;
  std::vector<CrustZone> crusts;

  std::optional<terrain::CrustSpec> crust_at(Vec2 p) const;
};

/// Boustrophedon survey: lanes run along x, stacked by increasing y, with
/// alternating direction.  Both lane ends are stepped on.
struct ScoutPlan {
  Vec2 region_lo;
  Vec2 region_hi;
  double lane_spacing = 0.5;
  double step_length = 0.2;
  terrain::ProbeGeometry probe;
  double noise_fraction = 0.05;  ///< force noise std as a fraction of the peak force
  double contact_threshold = proprioception::kDefaultContactThreshold;
  double step_period_s = 1.0;

  void validate() const;
  std::size_t lane_count() const;
  std::size_t steps_per_lane() const;
};

std::vector<Vec2> scout_positions(const ScoutPlan& plan);

/// Seed of the index-th step, decorrelated from its neighbours.
std::uint64_t step_seed(std::uint64_t mission_seed, std::size_t index);

/// Probe, extract, and fit at one footstep.  Returns nullopt when the trace
/// has no usable penetration phase.
std::optional<proprioception::StepMeasurement> scout_step(const ScoutPlan& plan, const GroundTruth& truth,
                                                          std::uint64_t mission_seed, std::size_t index);

/// All footsteps of the plan in order.  Throws InvalidInput when the region
/// leaves the field.
std::vector<proprioception::StepMeasurement> generate_scout_steps(const ScoutPlan& plan, const GroundTruth& truth,
                                                                  std::uint64_t seed);

}  // namespace scoutnav::mission
