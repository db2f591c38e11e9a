#include "scoutnav/wheel/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <vector>

#include "scoutnav/errors.hpp"

namespace scoutnav::wheel {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kQuadratureTolerance = 1e-6;
constexpr int kInitialIntervals = 64;
constexpr int kMaxDoublings = 12;

// Integrand values (per unit zeta R l) at one rim angle.
struct Sample {
  double fx, fz, tq;
};

Sample rim_sample(double theta, double theta0, double slip, const RftCoefficients& c) {
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  // Rim element in the stress model's frame: attack angle theta, motion
  // direction (1 - s - cos theta, sin theta) with +z into the sand.
  double vx = 1.0 - slip - ct;
  double vz = st;
  double r = std::hypot(vx, vz);
  if (r == 0.0) {
    vx = 0.0;
    vz = 1.0;
    r = 1.0;
  }
  const auto g = generic_stress_sc(theta, vz / r, vx / r, c);
  const double depth = ct - std::cos(theta0);
  const double sz = g.alpha_z * depth;
  const double sx = -g.alpha_x * depth;
  return {sx, sz, sx * ct + sz * st};
}

struct Piece {
  double a, b;
  std::vector<Sample> values;  // 2^k * kInitialIntervals + 1 nodes
};

Sample simpson(const Piece& p) {
  const auto n = p.values.size() - 1;
  const double h = (p.b - p.a) / static_cast<double>(n);
  Sample s{0, 0, 0};
  for (std::size_t i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s.fx += w * p.values[i].fx;
    s.fz += w * p.values[i].fz;
    s.tq += w * p.values[i].tq;
  }
  return {s.fx * h / 3.0, s.fz * h / 3.0, s.tq * h / 3.0};
}

void refine(Piece& p, double theta0, double slip, const RftCoefficients& c) {
  const auto n = p.values.size() - 1;
  const double h = (p.b - p.a) / static_cast<double>(2 * n);
  std::vector<Sample> next(2 * n + 1);
  for (std::size_t i = 0; i <= n; ++i) next[2 * i] = p.values[i];
  for (std::size_t i = 0; i < n; ++i) {
    next[2 * i + 1] = rim_sample(p.a + static_cast<double>(2 * i + 1) * h, theta0, slip, c);
  }
  p.values = std::move(next);
}

}  // namespace

void WheelParams::validate() const {
  const double f[] = {radius_m, width_m, load_kg, gravity, torque_limit};
  for (double v : f) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidInput("wheel parameters must be positive and finite");
  }
}

WheelParams rover_wheel(double payload_kg) {
  if (!(payload_kg >= 0.0)) throw InvalidInput("payload must be non-negative");
  WheelParams p;
  p.load_kg = (25.0 + payload_kg) / 4.0;
  return p;
}

WheelForces integrate_forces(double theta0, double slip, const WheelParams& params,
                             const RftStressModel& model) {
  params.validate();
  if (!(theta0 >= 0.0) || !(theta0 < kHalfPi)) throw InvalidInput("immersion angle must lie in [0, pi/2)");
  if (!(slip >= 0.0) || !(slip <= 1.0)) throw InvalidInput("slip must lie in [0, 1]");
  if (theta0 == 0.0) return {};

  std::vector<Piece> pieces;
  const double kink = std::acos(1.0 - slip);
  if (kink > 0.0 && kink < theta0) {
    const double frac = kink / theta0;
    const int left = std::clamp(static_cast<int>(std::lround(frac * kInitialIntervals / 2.0)) * 2, 2,
                                kInitialIntervals - 2);
    pieces.push_back({0.0, kink, std::vector<Sample>(static_cast<std::size_t>(left) + 1)});
    pieces.push_back({kink, theta0, std::vector<Sample>(static_cast<std::size_t>(kInitialIntervals - left) + 1)});
  } else {
    pieces.push_back({0.0, theta0, std::vector<Sample>(kInitialIntervals + 1)});
  }
  for (auto& p : pieces) {
    const auto n = p.values.size() - 1;
    for (std::size_t i = 0; i <= n; ++i) {
      const double t = p.a + (p.b - p.a) * static_cast<double>(i) / static_cast<double>(n);
      p.values[i] = rim_sample(t, theta0, slip, model.coefficients);
    }
  }

  auto total = [&] {
    Sample s{0, 0, 0};
    for (const auto& p : pieces) {
      const auto q = simpson(p);
      s.fx += q.fx;
      s.fz += q.fz;
      s.tq += q.tq;
    }
    return s;
  };

  Sample prev = total();
  for (int k = 0; k < kMaxDoublings; ++k) {
    for (auto& p : pieces) refine(p, theta0, slip, model.coefficients);
    const Sample cur = total();
    const double scale = std::max({std::abs(cur.fx), std::abs(cur.fz), std::abs(cur.tq)});
    const double change = std::max({std::abs(cur.fx - prev.fx), std::abs(cur.fz - prev.fz),
                                    std::abs(cur.tq - prev.tq)});
    if (change <= kQuadratureTolerance * scale) {
      const double r = params.radius_m;
      const double k0 = model.zeta * r * params.width_m * r;  // zeta * depth scale R * dA scale R l
      return {k0 * cur.fx, k0 * cur.fz, k0 * r * cur.tq};
    }
    prev = cur;
  }
  throw NumericalError("rim force quadrature did not converge");
}

namespace {

// Illinois regula falsi on a bracket with f(lo) < 0 < f(hi).
double illinois(const std::function<double(double)>& f, double lo, double flo, double hi, double fhi,
                double ftol, double xtol) {
  int side = 0;
  for (int it = 0; it < 200; ++it) {
    double x = (lo * fhi - hi * flo) / (fhi - flo);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    const double fx = f(x);
    if (std::abs(fx) <= ftol || hi - lo <= xtol) return x;
    if (fx < 0.0) {
      lo = x;
      flo = fx;
      if (side == -1) fhi *= 0.5;
      side = -1;
    } else {
      hi = x;
      fhi = fx;
      if (side == 1) flo *= 0.5;
      side = 1;
    }
  }
  return 0.5 * (lo + hi);
}

constexpr double kThetaMax = kHalfPi - 1e-9;

}  // namespace

WheelEquilibrium solve_equilibrium(const WheelParams& params, double alpha_z_meas,
                                   const RftCoefficients& c) {
  params.validate();
  const auto model = calibrated_model(alpha_z_meas, c);
  const double mg = params.weight();
  const double ftol = 1e-11 * mg;

  WheelEquilibrium out;
  out.w_tilde = mg / (model.zeta * params.radius_m * params.radius_m * params.width_m);

  auto fz_residual = [&](double slip) {
    return [&, slip](double t0) { return integrate_forces(t0, slip, params, model).fz - mg; };
  };

  // theta0 balancing the load at this slip, or nullopt on over-sinkage.
  auto sinkage = [&](double slip) -> std::optional<double> {
    const auto f = fz_residual(slip);
    const double fhi = f(kThetaMax);
    if (fhi < 0.0) return std::nullopt;
    return illinois(f, 0.0, -mg, kThetaMax, fhi, ftol, 1e-15);
  };

  struct State {
    double slip, theta0;
    WheelForces forces;
  };
  auto evaluate = [&](double slip) -> std::optional<State> {
    const auto t0 = sinkage(slip);
    if (!t0) return std::nullopt;
    return State{slip, *t0, integrate_forces(*t0, slip, params, model)};
  };
  auto finish = [&](const State& s, bool immobilized) {
    out.slip = s.slip;
    out.theta0 = s.theta0;
    out.fx = s.forces.fx;
    out.fz = s.forces.fz;
    out.torque = s.forces.torque;
    out.immobilized = immobilized;
    return out;
  };

  auto lo = evaluate(0.0);
  if (!lo) {
    out.slip = kMaxSlip;
    out.theta0 = kHalfPi;
    out.fz = mg;
    out.torque = std::numeric_limits<double>::quiet_NaN();
    out.immobilized = true;
    return out;
  }
  if (lo->forces.fx >= 0.0) return finish(*lo, false);

  // Outer bracket [lo, hi]: lo feasible with F_x < 0, hi either infeasible or F_x > 0.
  double hi_slip = kMaxSlip;
  auto hi = evaluate(hi_slip);
  if (hi && hi->forces.fx < 0.0) return finish(*hi, true);

  int side = 0;
  double flo = lo->forces.fx;
  double fhi = hi ? hi->forces.fx : 0.0;
  for (int it = 0; it < 200; ++it) {
    double s;
    if (hi) {
      s = (lo->slip * fhi - hi_slip * flo) / (fhi - flo);
      if (!(s > lo->slip && s < hi_slip)) s = 0.5 * (lo->slip + hi_slip);
    } else {
      s = 0.5 * (lo->slip + hi_slip);
    }
    auto mid = evaluate(s);
    if (mid && std::abs(mid->forces.fx) <= ftol) return finish(*mid, false);
    if (mid && mid->forces.fx < 0.0) {
      lo = mid;
      flo = mid->forces.fx;
      if (side == -1) fhi *= 0.5;
      side = -1;
    } else {
      hi_slip = s;
      hi = mid;
      if (mid) {
        fhi = mid->forces.fx;
        if (side == 1) flo *= 0.5;
        side = 1;
      } else {
        side = 0;
        flo = lo->forces.fx;
      }
    }
    if (hi_slip - lo->slip <= 1e-14) break;
  }
  // Converged onto the edge of the feasible slip range without zeroing F_x.
  const bool balanced = std::abs(lo->forces.fx) <= 1e-4 * mg;
  if (balanced) return finish(*lo, false);
  if (hi && std::abs(hi->forces.fx) <= 1e-4 * mg) return finish(*hi, false);
  finish(*lo, true);
  out.slip = kMaxSlip;
  return out;
}

RiskLayer wheel_risk_map(const ScalarRaster& strength, const WheelParams& params, double slip_threshold) {
  params.validate();
  if (!(slip_threshold > 0.0)) throw InvalidInput("slip threshold must be positive");
  const auto& g = strength.header();
  RiskLayer layer{"wheel", ScalarRaster(g, 0.0), ScalarRaster(g, 0.0), ScalarRaster(g, 0.0),
                  MaskRaster(g, 0)};
  for (std::size_t i = 0; i < strength.size(); ++i) {
    const double alpha = strength.values()[i];
    double slip = kMaxSlip;
    double torque = params.torque_limit;
    bool immobilized = true;
    if (alpha > 0.0) {
      const auto eq = solve_equilibrium(params, alpha);
      immobilized = eq.immobilized;
      slip = eq.slip;
      if (!immobilized) torque = eq.torque;
    }
    double score = std::max(slip / slip_threshold, torque / params.torque_limit);
    if (immobilized) score = std::max(score, 1.0);
    layer.slip.values()[i] = slip;
    layer.torque.values()[i] = torque;
    layer.score.values()[i] = score;
    layer.hazard.values()[i] = score >= 1.0 ? 1 : 0;
  }
  return layer;
}

}  // namespace scoutnav::wheel
