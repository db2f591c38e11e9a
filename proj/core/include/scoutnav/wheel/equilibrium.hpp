#pragma once

#include "scoutnav/grid.hpp"
#include "scoutnav/risk.hpp"
#include "scoutnav/wheel/rft.hpp"

namespace scoutnav::wheel {

struct WheelParams {
  double radius_m = 0.1;
  double width_m = 0.1;
  double load_kg = 10.0;  ///< per wheel
  double gravity = 9.81;
  double torque_limit = 8.0;  // N m

  /// Throws InvalidInput unless every field is positive and finite.
  void validate() const;
  double weight() const { return load_kg * gravity; }
};

/// Four-wheeled rover with a 25 kg body sharing `payload_kg` evenly.
WheelParams rover_wheel(double payload_kg);

struct WheelForces {
  double fx = 0.0;      ///< drawbar, +forward
  double fz = 0.0;      ///< vertical support, +up
  double torque = 0.0;  ///< axle torque, +driving
};

/// Stresses over the leading rim arc theta in [0, theta0], by composite
/// Simpson split at the slip kink, doubling nodes from 65 until the relative
/// change is below 1e-6.  Throws NumericalError if that does not happen.
WheelForces integrate_forces(double theta0, double slip, const WheelParams& params,
                             const RftStressModel& model);

struct WheelEquilibrium {
  double slip = 0.0;
  double theta0 = 0.0;
  double torque = 0.0;
  double fx = 0.0;
  double fz = 0.0;
  double w_tilde = 0.0;  ///< m g / (zeta R^2 l)
  bool immobilized = false;
};

inline constexpr double kMaxSlip = 0.999;

/// Steady rolling state with F_z = m g and F_x = 0.
///
/// Inner solve: theta0 for the vertical balance at fixed slip.  Outer solve:
/// slip for zero drawbar.  Both use bracketed regula falsi (Illinois).  A
/// slip whose vertical balance needs theta0 >= pi/2 counts as beyond the
/// root.  Over-sinkage and a drawbar deficit over every feasible slip are
/// reported with `immobilized` set and slip 0.999 rather than thrown.
WheelEquilibrium solve_equilibrium(const WheelParams& params, double alpha_z_meas,
                                   const RftCoefficients& c = generic_coefficients());

inline constexpr double kDefaultWheelSlipThreshold = 0.3;

/// Score = max(s / slip_threshold, tau / tau_max); immobilized cells score at
/// least 1 and report the torque limit.  Hazard where score >= 1.
RiskLayer wheel_risk_map(const ScalarRaster& strength, const WheelParams& params,
                         double slip_threshold = kDefaultWheelSlipThreshold);

}  // namespace scoutnav::wheel
