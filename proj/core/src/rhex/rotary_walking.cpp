#include "scoutnav/rhex/rotary_walking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "scoutnav/errors.hpp"

namespace scoutnav::rhex {
namespace {

constexpr double kCm3ToM3 = 1e6;  // N/cm^3 -> N/m^3

double leg_load(const RhexParams& p) {
  return p.mass_kg * (p.gravity + p.leg_radius_m * p.angular_speed / p.response_time_s);
}

double contact_scale(const RhexParams& p) {
  return static_cast<double>(p.legs_in_support) * p.leg_radius_m * p.leg_width_m;
}

}  // namespace

void RhexParams::validate() const {
  const double fields[] = {mass_kg, leg_radius_m, leg_width_m, hip_height_m,
                           angular_speed, response_time_s, gravity};
  for (double f : fields) {
    if (!(f > 0.0) || !std::isfinite(f)) throw InvalidInput("RHex parameters must be positive and finite");
  }
  if (legs_in_support < 1 || legs_in_support > 6) {
    throw InvalidInput("RHex legs in support must be within 1..6");
  }
  if (hip_height_m >= 2.0 * leg_radius_m) {
    throw InvalidInput("RHex hip height must be below the leg diameter");
  }
}

RhexParams RhexParams::lab() {
  RhexParams p;
  p.hip_height_m = p.leg_radius_m / 2.0;
  p.response_time_s = calibrate_response_time(p, kLabCriticalResistance);
  return p;
}

RhexParams RhexParams::field(double payload_kg) {
  if (!(payload_kg >= 0.0)) throw InvalidInput("payload must be non-negative");
  RhexParams p;
  p.mass_kg = 8.2 + payload_kg;
  p.leg_radius_m = 0.0875;
  p.leg_width_m = 0.026;
  p.hip_height_m = p.leg_radius_m / 2.0;
  p.response_time_s = lab().response_time_s;
  return p;
}

double max_speed(const RhexParams& p) {
  return 2.0 * p.leg_radius_m * p.angular_speed / std::numbers::pi;
}

double solidification_depth(const RhexParams& p, double alpha_z) {
  if (!(alpha_z > 0.0)) throw InvalidInput("penetration resistance must be positive");
  return leg_load(p) / (contact_scale(p) * alpha_z * kCm3ToM3);
}

double forward_speed(const RhexParams& p, double z) {
  if (!(z >= 0.0)) throw InvalidInput("sinkage must be non-negative");
  const double u = std::max(0.0, z / p.leg_radius_m + p.hip_height_m / p.leg_radius_m - 1.0);
  if (u >= 1.0) return 0.0;
  return max_speed(p) * std::sqrt(1.0 - u * u);
}

double slip_ratio(const RhexParams& p, double v) {
  const double vmax = max_speed(p);
  return std::clamp((vmax - v) / vmax, 0.0, 1.0);
}

double critical_resistance(const RhexParams& p) {
  p.validate();
  const double depth = 2.0 * p.leg_radius_m - p.hip_height_m;
  return leg_load(p) / (contact_scale(p) * depth) / kCm3ToM3;
}

double calibrate_response_time(const RhexParams& p, double target_alpha) {
  if (!(target_alpha > 0.0)) throw InvalidInput("target resistance must be positive");
  const double depth = 2.0 * p.leg_radius_m - p.hip_height_m;
  const double dynamic = target_alpha * kCm3ToM3 * contact_scale(p) * depth / p.mass_kg - p.gravity;
  if (!(dynamic > 0.0)) {
    throw InvalidInput("target resistance is below the static load; no response time reaches it");
  }
  return p.leg_radius_m * p.angular_speed / dynamic;
}

RhexPrediction predict(const RhexParams& p, double alpha_z) {
  RhexPrediction out;
  if (!(alpha_z > 0.0)) {
    out.sinkage_m = std::numeric_limits<double>::infinity();
    out.slip = 1.0;
    out.immobilized = true;
    return out;
  }
  out.sinkage_m = solidification_depth(p, alpha_z);
  out.speed_m_s = forward_speed(p, out.sinkage_m);
  out.slip = slip_ratio(p, out.speed_m_s);
  out.immobilized = out.speed_m_s == 0.0;
  return out;
}

RiskLayer rhex_risk_map(const ScalarRaster& strength, const RhexParams& p, double slip_threshold) {
  p.validate();
  if (!(slip_threshold > 0.0)) throw InvalidInput("slip threshold must be positive");
  const auto& g = strength.header();
  RiskLayer layer{"rhex", ScalarRaster(g, 0.0), ScalarRaster(g, 0.0), ScalarRaster(g, 0.0),
                  MaskRaster(g, 0)};
  for (std::size_t i = 0; i < strength.size(); ++i) {
    const auto pred = predict(p, strength.values()[i]);
    layer.slip.values()[i] = pred.slip;
    layer.score.values()[i] = pred.slip / slip_threshold;
    layer.hazard.values()[i] = pred.slip > slip_threshold ? 1 : 0;
  }
  return layer;
}

}  // namespace scoutnav::rhex
