#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scoutnav/geometry.hpp"
#include "scoutnav/proprioception/estimator.hpp"

namespace scoutnav::proprioception {

/// One scout footstep.
struct StepMeasurement {
  Vec2 position;                ///< world, m
  ResistanceEstimate estimate;
  double time_s = 0.0;

  friend constexpr bool operator==(const StepMeasurement&, const StepMeasurement&) = default;
};

inline constexpr std::string_view kStepLogHeader =
    "time_s,x_m,y_m,alpha_z_Ncm3,r_squared,n_samples";

/// CSV with kStepLogHeader; floats are written in shortest round-trip form so
/// a log re-read reproduces every value bit for bit.
std::string write_step_log(std::span<const StepMeasurement> steps);
std::string format_step_row(const StepMeasurement& step);

/// Throws InvalidInput naming the first malformed row.
std::vector<StepMeasurement> read_step_log(std::string_view text);

}  // namespace scoutnav::proprioception
