#include "scoutnav/mission/scout.hpp"

#include <cmath>

#include "scoutnav/errors.hpp"
#include "scoutnav/proprioception/estimator.hpp"

namespace scoutnav::mission {
namespace {

std::size_t count_along(double extent, double spacing) {
  return static_cast<std::size_t>(std::floor(extent / spacing + 1e-9)) + 1;
}

}  // namespace

std::optional<terrain::CrustSpec> GroundTruth::crust_at(Vec2 p) const {
  for (const auto& z : crusts) {
    if (p.x >= z.lo.x && p.x <= z.hi.x && p.y >= z.lo.y && p.y <= z.hi.y) return z.crust;
  }
  return std::nullopt;
}

void ScoutPlan::validate() const {
  probe.validate();
  if (!(lane_spacing > 0.0) || !(step_length > 0.0)) throw InvalidInput("scout spacing and step length must be positive");
  if (!(region_hi.x >= region_lo.x) || !(region_hi.y >= region_lo.y)) throw InvalidInput("scout region is inverted");
  if (!(noise_fraction >= 0.0) || !(step_period_s > 0.0)) throw InvalidInput("scout noise and period must be non-negative");
}

std::size_t ScoutPlan::lane_count() const { return count_along(region_hi.y - region_lo.y, lane_spacing); }
std::size_t ScoutPlan::steps_per_lane() const { return count_along(region_hi.x - region_lo.x, step_length); }

std::vector<Vec2> scout_positions(const ScoutPlan& plan) {
  plan.validate();
  const auto lanes = plan.lane_count();
  const auto per_lane = plan.steps_per_lane();
  std::vector<Vec2> out;
  out.reserve(lanes * per_lane);
  for (std::size_t l = 0; l < lanes; ++l) {
    const double y = plan.region_lo.y + static_cast<double>(l) * plan.lane_spacing;
    for (std::size_t k = 0; k < per_lane; ++k) {
      const std::size_t i = (l % 2 == 0) ? k : per_lane - 1 - k;
      out.push_back({plan.region_lo.x + static_cast<double>(i) * plan.step_length, y});
    }
  }
  return out;
}

std::uint64_t step_seed(std::uint64_t mission_seed, std::size_t index) {
  // splitmix64 finalizer over the combined value
  std::uint64_t z = mission_seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

std::optional<proprioception::StepMeasurement> measure_at(const ScoutPlan& plan, const GroundTruth& truth,
                                                          std::uint64_t mission_seed, std::size_t index, Vec2 p) {
  const double alpha = terrain::sample_resistance(truth.field, p);
  const double noise = plan.noise_fraction * plan.probe.area_cm2 * alpha * plan.probe.max_depth_cm;
  const auto trace = terrain::synthesize_trace(truth.field, p, plan.probe, noise, truth.crust_at(p),
                                               step_seed(mission_seed, index));
  try {
    const auto phase = proprioception::extract_penetration_phase(trace, plan.contact_threshold);
    proprioception::StepMeasurement m;
    m.position = p;
    m.estimate = proprioception::fit_resistance(phase);
    m.time_s = static_cast<double>(index) * plan.step_period_s;
    return m;
  } catch (const EmptyPhaseError&) {
    return std::nullopt;
  }
}

}  // namespace

std::optional<proprioception::StepMeasurement> scout_step(const ScoutPlan& plan, const GroundTruth& truth,
                                                          std::uint64_t mission_seed, std::size_t index) {
  const auto positions = scout_positions(plan);
  if (index >= positions.size()) throw OutOfBounds("scout step index past the end of the plan");
  return measure_at(plan, truth, mission_seed, index, positions[index]);
}

std::vector<proprioception::StepMeasurement> generate_scout_steps(const ScoutPlan& plan, const GroundTruth& truth,
                                                                  std::uint64_t seed) {
  plan.validate();
  const auto& g = truth.field.header();
  if (!g.contains(plan.region_lo) || !g.contains(plan.region_hi)) {
    throw InvalidInput("scout region extends beyond the ground-truth field");
  }
  const auto positions = scout_positions(plan);
  std::vector<proprioception::StepMeasurement> out;
  out.reserve(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (auto m = measure_at(plan, truth, seed, i, positions[i])) out.push_back(*m);
  }
  return out;
}

}  // namespace scoutnav::mission
