#include "scoutnav/mission/config.hpp"

#include <cmath>

#include "scoutnav/errors.hpp"
#include "scoutnav/io.hpp"

namespace scoutnav::mission {

wheel::WheelParams WheelPlatform::params() const {
  auto p = wheel::rover_wheel(payload_kg);
  p.torque_limit = torque_limit;
  return p;
}

void MissionConfig::validate() const {
  if (!rhex && !wheel) throw InvalidInput("mission needs at least one platform");
  scout.validate();
  kernel.validate();
  fitness_kernel.validate();
  map_grid.validate();
  planner.validate();
  if (update_every == 0) throw InvalidInput("GPR update cadence must be positive");
  if (!std::isfinite(risk_threshold)) throw InvalidInput("risk threshold must be finite");
  const auto& field = truth.field.header();
  if (!field.contains(scout.region_lo) || !field.contains(scout.region_hi)) {
    throw InvalidInput("scout region extends beyond the ground-truth field");
  }
  if (rhex) {
    if (rhex->payloads_kg.empty()) throw InvalidInput("hexapod payload list is empty");
    for (double m : rhex->payloads_kg) {
      if (!(m >= 0.0)) throw InvalidInput("payloads must be non-negative");
    }
    if (!(rhex->planning_payload_kg >= 0.0)) throw InvalidInput("planning payload must be non-negative");
  }
  if (wheel) wheel->params().validate();
  for (const auto& g : goals) {
    if (!map_grid.contains(g)) throw InvalidInput("goal lies outside the map");
  }
  if (!goals.empty() && !map_grid.contains(start)) throw InvalidInput("start lies outside the map");
}

PlanningPlatform MissionConfig::planning_platform() const {
  return wheel ? PlanningPlatform::kWheel : PlanningPlatform::kRhex;
}

std::string MissionConfig::planning_layer_name() const {
  return wheel ? wheel_layer_name(wheel->payload_kg) : rhex_layer_name(rhex->planning_payload_kg);
}

std::string rhex_layer_name(double payload_kg) { return "rhex_" + io::format_double(payload_kg) + "kg"; }
std::string wheel_layer_name(double payload_kg) { return "wheel_" + io::format_double(payload_kg) + "kg"; }

MissionConfig ames_preset() {
  MissionConfig c(GroundTruth{terrain::ames_testbed_field(), {}});
  c.name = "ames";
  c.scout.region_lo = {0.1, 0.1};
  c.scout.region_hi = {3.9, 5.9};
  c.scout.lane_spacing = 0.5;
  c.scout.step_length = 0.2;
  c.scout.probe.descent_speed_cm_s = 8.0;
  c.map_grid = make_grid({0.0, 0.0}, {4.0, 6.0}, 0.25);
  c.rhex = RhexPlatform{};
  c.seed = 20240611;
  return c;
}

namespace {

// Background sand with a soft Gaussian hollow.
terrain::ResistanceField whitesands_field() {
  const auto g = make_grid({0.0, 0.0}, {10.0, 15.0}, 0.25);
  ScalarRaster r(g, 0.0);
  const Vec2 centre{6.9, 10.7};
  const double background = 3.0, floor = 0.3, sigma = 1.8;
  for (std::size_t row = 0; row < g.height; ++row) {
    for (std::size_t col = 0; col < g.width; ++col) {
      const double d2 = squared_norm(g.cell_center({col, row}) - centre);
      r.at(col, row) = background - (background - floor) * std::exp(-d2 / (2.0 * sigma * sigma));
    }
  }
  return terrain::ResistanceField(std::move(r));
}

}  // namespace

MissionConfig whitesands_preset() {
  MissionConfig c(GroundTruth{whitesands_field(), {}});
  c.name = "whitesands";
  c.truth.crusts.push_back({{7.0, 2.0}, {9.0, 4.0}, terrain::CrustSpec{}});
  c.scout.region_lo = {0.25, 0.25};
  c.scout.region_hi = {9.75, 14.75};
  c.scout.lane_spacing = 1.0;
  c.scout.step_length = 0.5;
  c.scout.probe.descent_speed_cm_s = 8.0;
  c.map_grid = make_grid({0.0, 0.0}, {10.0, 15.0}, 0.5);
  c.wheel = WheelPlatform{20.0};
  c.start = {3.0, 1.5};
  c.goals = {{3.0, 6.0}, {7.0, 13.0}};
  c.seed = 20240612;
  return c;
}

MissionConfig preset_by_name(std::string_view name) {
  if (name == "ames") return ames_preset();
  if (name == "whitesands") return whitesands_preset();
  throw InvalidInput("unknown preset '" + std::string(name) + "' (expected ames or whitesands)");
}

}  // namespace scoutnav::mission
