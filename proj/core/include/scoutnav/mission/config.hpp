#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scoutnav/mapping/kernel.hpp"
#include "scoutnav/mission/scout.hpp"
#include "scoutnav/planner/potential_field.hpp"
#include "scoutnav/rhex/rotary_walking.hpp"
#include "scoutnav/wheel/equilibrium.hpp"

namespace scoutnav::mission {

/// Field hexapod evaluated at several payloads.
struct RhexPlatform {
  std::vector<double> payloads_kg{40.0, 60.0, 80.0, 100.0};
  double planning_payload_kg = 60.0;
  double slip_threshold = rhex::kDefaultSlipThreshold;
};

/// Four-wheeled rover.
struct WheelPlatform {
  double payload_kg = 60.0;
  double slip_threshold = wheel::kDefaultWheelSlipThreshold;
  double torque_limit = 8.0;

  wheel::WheelParams params() const;
};

enum class PlanningPlatform { kWheel, kRhex };

struct MissionConfig {
  explicit MissionConfig(GroundTruth ground_truth) : truth(std::move(ground_truth)) {}

  std::string name;
  GroundTruth truth;
  ScoutPlan scout;
  mapping::KernelParams kernel;
  mapping::KernelParams fitness_kernel;
  bool select_hyperparameters = false;
  GridHeader map_grid;
  std::optional<RhexPlatform> rhex;
  std::optional<WheelPlatform> wheel;
  planner::PlannerConfig planner;
  Vec2 start;
  std::vector<Vec2> goals;
  double risk_threshold = 1.0;
  std::size_t update_every = 20;  ///< GPR refit cadence, steps
  std::uint64_t seed = 1;

  /// Throws InvalidInput on an unusable configuration.
  void validate() const;

  /// Wheel when configured, otherwise the hexapod at its planning payload.
  PlanningPlatform planning_platform() const;
  std::string planning_layer_name() const;
};

/// Gridded 4 x 6 m testbed: hexapod payload sweep, no goals.
MissionConfig ames_preset();

/// Synthetic 10 x 15 m transect with a soft blob between two goals and a
/// crusted patch; wheeled rover.  Not a measured field.
MissionConfig whitesands_preset();

/// "ames" or "whitesands"; throws InvalidInput otherwise.
MissionConfig preset_by_name(std::string_view name);

std::string rhex_layer_name(double payload_kg);
std::string wheel_layer_name(double payload_kg);

}  // namespace scoutnav::mission
