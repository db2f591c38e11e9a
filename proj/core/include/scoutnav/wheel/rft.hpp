#pragma once

#include <string_view>

namespace scoutnav::wheel {

/// Generic granular stress-per-depth coefficients.  Term ids follow the data
/// file: A/B build the vertical response, C/D the horizontal one.
struct RftCoefficients {
  int version = 0;
  double a00 = 0.0, a10 = 0.0, b11 = 0.0, b01 = 0.0, bm11 = 0.0;
  double c11 = 0.0, c01 = 0.0, cm11 = 0.0, d10 = 0.0;
};

/// Parses "version N" and "ID value" lines; '#' starts a comment.  Unknown or
/// duplicate ids and a missing version raise InvalidInput.
RftCoefficients parse_rft_coefficients(std::string_view text);

/// The coefficient table shipped with the library.
const RftCoefficients& generic_coefficients();

struct GenericStress {
  double alpha_z = 0.0;  ///< vertical, positive resists downward intrusion
  double alpha_x = 0.0;  ///< horizontal
};

/// Generic stress per unit depth for a plate at attack angle `beta` moving
/// along intrusion angle `gamma` (gamma = pi/2 is straight down).  The
/// expansion covers |gamma| <= pi/2; other directions use the mirror rule
/// alpha_z(beta, gamma) = alpha_z(-beta, pi - gamma), alpha_x flipping sign.
GenericStress generic_stress(double beta, double gamma,
                             const RftCoefficients& c = generic_coefficients());

/// Same, from the sine and cosine of gamma (need not be normalized jointly
/// with anything else, but must describe a unit direction).
GenericStress generic_stress_sc(double beta, double sin_gamma, double cos_gamma,
                                const RftCoefficients& c = generic_coefficients());

struct LocalKinematics {
  double beta = 0.0;
  double gamma = 0.0;
};

/// Rim-element orientation at polar angle theta for slip s:
/// beta = -theta, gamma = atan2(-sin theta, 1 - s - cos theta).
/// (theta, s) = (0, 0) has no motion direction and returns gamma = 0.
LocalKinematics local_kinematics(double theta, double slip);

/// Scaled stress model sigma = zeta * alpha_gen * depth.
struct RftStressModel {
  double zeta = 0.0;  ///< N/m^3 per generic unit
  RftCoefficients coefficients = generic_coefficients();
};

/// zeta = alpha_meas / alpha_z_gen(0, pi/2), alpha_meas given in N/cm^3.
double calibrate_zeta(double alpha_z_meas, const RftCoefficients& c = generic_coefficients());

RftStressModel calibrated_model(double alpha_z_meas,
                                const RftCoefficients& c = generic_coefficients());

/// Vertical force on a horizontal plate of `area_m2` pushed straight down to
/// `depth_m` under `model`, N.
double flat_plate_force(const RftStressModel& model, double area_m2, double depth_m);

}  // namespace scoutnav::wheel
