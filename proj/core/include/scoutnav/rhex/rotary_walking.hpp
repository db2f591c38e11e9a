#pragma once

#include "scoutnav/grid.hpp"
#include "scoutnav/risk.hpp"

namespace scoutnav::rhex {

/// Rotary-walking parameters of a C-legged hexapod.
struct RhexParams {
  double mass_kg = 0.4;
  double leg_radius_m = 0.04;
  double leg_width_m = 0.011;
  int legs_in_support = 3;
  double hip_height_m = 0.02;
  double angular_speed = 6.283185307179586;  // rad/s
  double response_time_s = 1.0;             // elastic response time of the sand-leg contact
  double gravity = 9.81;

  /// Throws InvalidInput on non-positive fields, legs outside 1..6, or h >= 2R.
  void validate() const;

  /// Desk-scale robot: 0.4 kg, R = 4 cm, W = 1.1 cm, tripod support, 1 Hz
  /// legs, h = R/2, with the response time calibrated so that the zero-speed
  /// onset sits at 0.05 N/cm^3.
  static RhexParams lab();

  /// Field-scale hexapod carrying `payload_kg` on an 8.2 kg body, using the
  /// lab-calibrated response time.
  static RhexParams field(double payload_kg);
};

inline constexpr double kLabCriticalResistance = 0.05;  // N/cm^3
inline constexpr double kDefaultSlipThreshold = 0.95;

struct RhexPrediction {
  double sinkage_m = 0.0;
  double speed_m_s = 0.0;
  double slip = 0.0;
  bool immobilized = false;
};

/// 2 R omega / pi.
double max_speed(const RhexParams& p);

/// Depth at which the granular yield force balances the leg load, m.
/// `alpha_z` is in N/cm^3.  Throws InvalidInput unless alpha_z > 0.
double solidification_depth(const RhexParams& p, double alpha_z);

/// Fore-aft speed for a leg sunk to `z` metres.
///
/// u = z/R + h/R - 1.  The rotation pivot cannot rise above the hip, so u is
/// floored at 0 (shallow sinkage runs at v_max); u >= 1 is immobilization.
double forward_speed(const RhexParams& p, double z);

/// (v_max - v) / v_max, clamped to [0, 1].
double slip_ratio(const RhexParams& p, double v);

/// Resistance at which sinkage reaches the immobilization depth 2R - h, N/cm^3.
double critical_resistance(const RhexParams& p);

/// Response time that places the critical resistance at `target_alpha` N/cm^3.
/// Throws InvalidInput when no positive response time can do so.
double calibrate_response_time(const RhexParams& p, double target_alpha);

/// Full chain alpha -> z -> v -> s.  Non-positive alpha is immobilizing.
RhexPrediction predict(const RhexParams& p, double alpha_z);

/// Hazard where slip exceeds `slip_threshold`; score = slip / slip_threshold.
RiskLayer rhex_risk_map(const ScalarRaster& strength, const RhexParams& p,
                        double slip_threshold = kDefaultSlipThreshold);

}  // namespace scoutnav::rhex
