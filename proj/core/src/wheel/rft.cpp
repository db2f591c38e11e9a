#include "scoutnav/wheel/rft.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "scoutnav/embedded_data.hpp"
#include "scoutnav/errors.hpp"
#include "scoutnav/io.hpp"

namespace scoutnav::wheel {

RftCoefficients parse_rft_coefficients(std::string_view text) {
  RftCoefficients c;
  const std::map<std::string, double RftCoefficients::*, std::less<>> fields = {
      {"A00", &RftCoefficients::a00}, {"A10", &RftCoefficients::a10},
      {"B11", &RftCoefficients::b11}, {"B01", &RftCoefficients::b01},
      {"Bm11", &RftCoefficients::bm11}, {"C11", &RftCoefficients::c11},
      {"C01", &RftCoefficients::c01}, {"Cm11", &RftCoefficients::cm11},
      {"D10", &RftCoefficients::d10}};
  std::map<std::string, bool, std::less<>> seen;
  bool have_version = false;

  for (auto line : io::lines(text)) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = io::trim(line);
    if (line.empty()) continue;
    const auto gap = line.find_first_of(" \t");
    if (gap == std::string_view::npos) throw InvalidInput("coefficient line without value: " + std::string(line));
    const auto id = line.substr(0, gap);
    const auto value = io::trim(line.substr(gap));
    if (id == "version") {
      c.version = static_cast<int>(io::parse_integer(value));
      have_version = true;
      continue;
    }
    const auto it = fields.find(id);
    if (it == fields.end()) throw InvalidInput("unknown coefficient id: " + std::string(id));
    if (seen[std::string(id)]) throw InvalidInput("duplicate coefficient id: " + std::string(id));
    seen[std::string(id)] = true;
    c.*(it->second) = io::parse_double(value);
  }
  if (!have_version) throw InvalidInput("coefficient table has no version line");
  return c;
}

const RftCoefficients& generic_coefficients() {
  static const RftCoefficients c = parse_rft_coefficients(embedded::kRftGenericCoefficients);
  return c;
}

GenericStress generic_stress_sc(double beta, double sin_gamma, double cos_gamma,
                                const RftCoefficients& c) {
  bool mirrored = false;
  if (cos_gamma < 0.0) {
    beta = -beta;
    cos_gamma = -cos_gamma;
    mirrored = true;
  }
  const double s2b = std::sin(2.0 * beta);
  const double c2b = std::cos(2.0 * beta);
  // sin/cos of (2 beta +- gamma) by the angle-sum identities
  const double sin_p = s2b * cos_gamma + c2b * sin_gamma;
  const double cos_p = c2b * cos_gamma - s2b * sin_gamma;
  const double sin_m = -s2b * cos_gamma + c2b * sin_gamma;
  const double cos_m = c2b * cos_gamma + s2b * sin_gamma;

  GenericStress out;
  out.alpha_z = c.a00 + c.a10 * c2b + c.b11 * sin_p + c.b01 * sin_gamma + c.bm11 * sin_m;
  out.alpha_x = c.c11 * cos_p + c.c01 * cos_gamma + c.cm11 * cos_m + c.d10 * s2b;
  if (mirrored) out.alpha_x = -out.alpha_x;
  return out;
}

GenericStress generic_stress(double beta, double gamma, const RftCoefficients& c) {
  return generic_stress_sc(beta, std::sin(gamma), std::cos(gamma), c);
}

LocalKinematics local_kinematics(double theta, double slip) {
  const double vz = -std::sin(theta);
  const double vx = 1.0 - slip - std::cos(theta);
  if (vz == 0.0 && vx == 0.0) return {-theta, 0.0};
  return {-theta, std::atan2(vz, vx)};
}

double calibrate_zeta(double alpha_z_meas, const RftCoefficients& c) {
  if (!(alpha_z_meas > 0.0)) throw InvalidInput("measured resistance must be positive");
  const double vertical = generic_stress(0.0, std::numbers::pi / 2.0, c).alpha_z;
  if (!(vertical > 0.0)) throw InvalidInput("coefficients give no vertical penetration resistance");
  return alpha_z_meas * 1e6 / vertical;
}

RftStressModel calibrated_model(double alpha_z_meas, const RftCoefficients& c) {
  return {calibrate_zeta(alpha_z_meas, c), c};
}

double flat_plate_force(const RftStressModel& model, double area_m2, double depth_m) {
  const double vertical = generic_stress(0.0, std::numbers::pi / 2.0, model.coefficients).alpha_z;
  return model.zeta * vertical * depth_m * area_m2;
}

}  // namespace scoutnav::wheel
