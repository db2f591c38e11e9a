#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "scoutnav/errors.hpp"
#include "scoutnav/proprioception/estimator.hpp"
#include "scoutnav/proprioception/ground_plane.hpp"
#include "scoutnav/proprioception/step_log.hpp"
#include "scoutnav/terrain/trace.hpp"

namespace {

using namespace scoutnav;
using namespace scoutnav::proprioception;
using terrain::ForceDepthTrace;
using terrain::ForceSample;
using terrain::ProbeGeometry;

ForceDepthTrace make_trace(std::vector<ForceSample> s) { return ForceDepthTrace(std::move(s), ProbeGeometry{}); }

TEST(PenetrationPhase, MonotoneTraceIsReturnedWhole) {
  const auto t = terrain::synthesize_trace(1.5, ProbeGeometry{}, 0.0, std::nullopt, 0);
  const auto p = extract_penetration_phase(t, 0.0);
  ASSERT_EQ(p.samples().size(), t.samples().size());
  EXPECT_TRUE(std::equal(p.samples().begin(), p.samples().end(), t.samples().begin()));
}

TEST(PenetrationPhase, LeadingFreeFallIsDroppedAndDepthRezeroed) {
  const auto t = make_trace({{0.0, 0.0}, {0.1, 0.0}, {0.2, 0.0}, {0.3, 1.0}, {0.4, 2.0}, {0.5, 3.0}});
  const auto p = extract_penetration_phase(t, 0.5);
  ASSERT_EQ(p.samples().size(), 4u);
  EXPECT_DOUBLE_EQ(p.samples()[0].depth_cm, 0.0);
  EXPECT_DOUBLE_EQ(p.samples()[0].force_n, 0.0);
  EXPECT_NEAR(p.samples()[1].depth_cm, 0.1, 1e-15);
  EXPECT_DOUBLE_EQ(p.samples()[1].force_n, 1.0);
  EXPECT_NEAR(p.samples()[3].depth_cm, 0.3, 1e-15);
  const auto est = fit_resistance(p.samples(), 1.0);
  EXPECT_NEAR(est.alpha_z, 10.0, 1e-9);
}

// Exhaustive scan: every window [a, b) whose samples all clear the threshold
// with strictly increasing depth; longest wins, then earliest.
std::pair<std::size_t, std::size_t> window_oracle(std::span<const ForceSample> s, double thr) {
  std::size_t best_a = 0, best_len = 0;
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = a + 1; b <= s.size(); ++b) {
      bool ok = true;
      for (std::size_t k = a; k < b && ok; ++k) {
        ok = s[k].force_n >= thr && (k == a || s[k].depth_cm > s[k - 1].depth_cm);
      }
      if (ok && b - a > best_len) {
        best_a = a;
        best_len = b - a;
      }
    }
  }
  return {best_a, best_len};
}

// Touchdown by brute force: each candidate's hinge is fitted with Eigen on
// the explicit design column, pre-touchdown samples predicted as zero.
std::size_t touchdown_oracle(const std::vector<ForceSample>& s, std::size_t a, std::size_t end) {
  std::size_t first = a;
  while (first > 0 && s[first - 1].depth_cm < s[first].depth_cm) --first;
  const auto m = static_cast<Eigen::Index>(end - first);
  std::vector<double> sse;
  for (std::size_t b = first; b <= a; ++b) {
    Eigen::VectorXd x(m), f(m);
    for (std::size_t k = first; k < end; ++k) {
      const auto r = static_cast<Eigen::Index>(k - first);
      x(r) = k < b ? 0.0 : s[k].depth_cm - s[b].depth_cm;
      f(r) = s[k].force_n;
    }
    if (x.squaredNorm() == 0.0) {
      sse.push_back(std::numeric_limits<double>::infinity());
      continue;
    }
    const double slope = x.colPivHouseholderQr().solve(f)(0);
    sse.push_back((f - slope * x).squaredNorm());
  }
  const double best = *std::min_element(sse.begin(), sse.end());
  if (!std::isfinite(best)) return a;
  const double margin = 2.0 * best / std::max(1.0, static_cast<double>(m) - 2.0);
  for (std::size_t b = first; b <= a; ++b) {
    if (sse[b - first] <= best + margin * (1.0 + 1e-9) + 1e-12) return b;
  }
  return a;
}

TEST(PenetrationPhase, MatchesExhaustiveWindowOracle) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ForceSample> s{{0.0, 0.0}};
    const std::size_t n = 8 + rng() % 30;
    double z = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
      const double r = u(rng);
      if (r >= 0.15) z += 0.1;  // otherwise the toe stalls at the same depth
      s.push_back({z, r < 0.25 ? 0.1 * u(rng) : 4.0 * u(rng) + 0.5});
    }
    const auto t = make_trace(s);
    const double thr = 0.5;
    const auto [a, len] = window_oracle(t.samples(), thr);
    if (len == 0) {
      EXPECT_THROW(extract_penetration_phase(t, thr), EmptyPhaseError);
      continue;
    }
    const std::size_t begin = touchdown_oracle(s, a, a + len);
    if (a + len - begin < 2) {
      EXPECT_THROW(extract_penetration_phase(t, thr), EmptyPhaseError);
      continue;
    }
    const auto p = extract_penetration_phase(t, thr);
    ASSERT_EQ(p.samples().size(), a + len - begin) << "trial " << trial;
    for (std::size_t k = 0; k < p.samples().size(); ++k) {
      EXPECT_DOUBLE_EQ(p.samples()[k].depth_cm, s[begin + k].depth_cm - s[begin].depth_cm);
      EXPECT_EQ(p.samples()[k].force_n, s[begin + k].force_n);
    }
  }
}

TEST(PenetrationPhase, SubThresholdLoadingRampIsKept) {
  // Soft ground: the first samples sit below the threshold but are already in contact.
  const auto t = terrain::synthesize_trace(0.3, ProbeGeometry{}, 0.0, std::nullopt, 0);
  const auto p = extract_penetration_phase(t, 0.5);
  EXPECT_EQ(p.samples().size(), t.samples().size());
  EXPECT_NEAR(fit_resistance(p).alpha_z, 0.3, 1e-12);
}

TEST(PenetrationPhase, NoisyTouchdownIsNotBiasedDeep) {
  // Noise at 5% of peak force clamps some shallow contact samples to zero.
  const ProbeGeometry probe;
  double bias = 0.0;
  const int n = 400;
  for (int k = 0; k < n; ++k) {
    const auto t = terrain::synthesize_trace(1.0, probe, 0.05 * probe.area_cm2 * probe.max_depth_cm, std::nullopt,
                                             static_cast<std::uint64_t>(900 + k));
    bias += fit_resistance(extract_penetration_phase(t, 0.5)).alpha_z - 1.0;
  }
  EXPECT_LT(std::abs(bias / n), 0.01);
}

TEST(PenetrationPhase, RetractionTailIsExcluded) {
  const auto t = terrain::synthesize_trace(2.0, ProbeGeometry{}, 0.0, std::nullopt, 0);
  const auto s = t.samples();
  std::vector<ForceSample> v(s.begin(), s.end());
  // Lift-off: depth held at max while the force stays high.
  for (int k = 0; k < 10; ++k) v.push_back({v.back().depth_cm, v.back().force_n - 1.0});
  const auto p = extract_penetration_phase(make_trace(v), 0.5);
  EXPECT_EQ(p.samples().size(), s.size());
  EXPECT_NEAR(fit_resistance(p).alpha_z, 2.0, 1e-12);
}

TEST(PenetrationPhase, Errors) {
  const auto quiet = make_trace({{0.0, 0.0}, {0.1, 0.1}, {0.2, 0.2}});
  EXPECT_THROW(extract_penetration_phase(quiet, 0.5), EmptyPhaseError);
  EXPECT_THROW(extract_penetration_phase(quiet, -1.0), InvalidInput);
}

TEST(FitResistance, ExactLinear) {
  const std::vector<ForceSample> s{{1, 2}, {2, 4}, {3, 6}};
  const auto e = fit_resistance(s, 1.0);
  EXPECT_DOUBLE_EQ(e.alpha_z, 2.0);
  EXPECT_EQ(e.r_squared, 1.0);
  EXPECT_EQ(e.n_samples, 3u);
}

TEST(FitResistance, PlateauSignature) {
  const std::vector<ForceSample> s{{1, 3}, {2, 3}, {3, 3}};
  const auto e = fit_resistance(s, 1.0);
  // sum(z f) / sum(z^2) = 18 / 14
  EXPECT_NEAR(e.alpha_z, 18.0 / 14.0, 1e-15);
  EXPECT_EQ(e.r_squared, 0.0);
  const std::vector<ForceSample> half{{1, 1.5}, {2, 1.5}, {3, 1.5}};
  EXPECT_NEAR(fit_resistance(half, 1.0).alpha_z, 9.0 / 14.0, 1e-15);
}

TEST(FitResistance, ClampsAndSingular) {
  const std::vector<ForceSample> falling{{1, 5}, {2, 3}, {3, -4}};
  const auto e = fit_resistance(falling, 1.0);
  EXPECT_EQ(e.alpha_z, 0.0);
  EXPECT_GE(e.r_squared, 0.0);
  const std::vector<ForceSample> flat{{0, 1}, {0, 2}};
  EXPECT_THROW(fit_resistance(flat, 1.0), SingularFitError);
  EXPECT_THROW(fit_resistance(std::span<const ForceSample>(flat).first(1), 1.0), InvalidInput);
  EXPECT_THROW(fit_resistance(std::vector<ForceSample>{{1, 1}, {2, 2}}, 0.0), InvalidInput);
}

TEST(FitResistance, ScaleAndAreaEquivariance) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.5, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = terrain::synthesize_trace(u(rng), ProbeGeometry{}, 0.4, std::nullopt, rng());
    const auto base = fit_resistance(t.samples(), 5.0);
    const double c = u(rng);
    std::vector<ForceSample> scaled(t.samples().begin(), t.samples().end());
    for (auto& s : scaled) s.force_n *= c;
    const auto e1 = fit_resistance(scaled, 5.0);
    EXPECT_NEAR(e1.alpha_z, c * base.alpha_z, 1e-12 * c * base.alpha_z);
    EXPECT_NEAR(e1.r_squared, base.r_squared, 1e-12);
    const auto e2 = fit_resistance(t.samples(), 5.0 * c);
    EXPECT_NEAR(e2.alpha_z, base.alpha_z / c, 1e-12 * base.alpha_z);
    EXPECT_NEAR(e2.r_squared, base.r_squared, 1e-12);
  }
}

TEST(FitResistance, RSquaredFallsAsPlateauGrows) {
  double prev = 2.0;
  for (double plateau : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    const auto t = terrain::synthesize_trace(0.5, ProbeGeometry{}, 0.0, terrain::CrustSpec{plateau, 0.5, 1.5}, 0);
    const double r2 = fit_resistance(t).r_squared;
    EXPECT_LT(r2, prev) << plateau;
    prev = r2;
  }
}

TEST(GroundPlane, FlatTriangle) {
  const std::vector<Vec3> pts{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  const auto g = estimate_ground_plane(pts);
  EXPECT_NEAR(g.normal.x, 0.0, 1e-15);
  EXPECT_NEAR(g.normal.y, 0.0, 1e-15);
  EXPECT_NEAR(g.normal.z, 1.0, 1e-15);
  EXPECT_NEAR(g.point.z, 0.0, 1e-15);
}

TEST(GroundPlane, ExactTiltedPlane) {
  auto z = [](double x, double) { return 0.5 + 0.1 * x; };
  const std::vector<Vec3> pts{{0, 0, z(0, 0)}, {1, 0, z(1, 0)}, {0, 2, z(0, 2)}, {3, 1, z(3, 1)}};
  const auto g = estimate_ground_plane(pts);
  const double s = std::sqrt(1.0 + 0.01);
  EXPECT_NEAR(g.normal.x, -0.1 / s, 1e-9);
  EXPECT_NEAR(g.normal.y, 0.0, 1e-9);
  EXPECT_NEAR(g.normal.z, 1.0 / s, 1e-9);
}

TEST(GroundPlane, NoisyPointsMatchNormalEquations) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec3> pts;
    for (int i = 0; i < 4; ++i) pts.push_back({u(rng), u(rng), 0.2 * u(rng)});
    Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
    Eigen::Vector3d atz = Eigen::Vector3d::Zero();
    for (const auto& p : pts) {
      const Eigen::Vector3d row(1.0, p.x, p.y);
      ata += row * row.transpose();
      atz += row * p.z;
    }
    const Eigen::Vector3d abc = ata.inverse() * atz;
    Vec3 n{-abc(1), -abc(2), 1.0};
    n = n * (1.0 / norm(n));
    const auto g = estimate_ground_plane(pts);
    EXPECT_NEAR(g.normal.x, n.x, 1e-9);
    EXPECT_NEAR(g.normal.y, n.y, 1e-9);
    EXPECT_NEAR(g.normal.z, n.z, 1e-9);
    EXPECT_NEAR(g.point.z, abc(0) + abc(1) * g.point.x + abc(2) * g.point.y, 1e-9);
  }
}

TEST(GroundPlane, RejectsDegenerateInput) {
  EXPECT_THROW(estimate_ground_plane(std::vector<Vec3>{{0, 0, 0}, {1, 0, 0}}), InvalidInput);
  EXPECT_THROW(estimate_ground_plane(std::vector<Vec3>{{0, 0, 0}, {1, 1, 0}, {2, 2, 1}}), InvalidInput);
}

TEST(DepthNormalToPlane, Cases) {
  const GroundPlane flat{{0, 0, 0}, {0, 0, 1}};
  EXPECT_EQ(depth_normal_to_plane({0, 0, 0}, flat), 0.0);
  EXPECT_NEAR(depth_normal_to_plane({0.3, -0.2, -0.02}, flat), 2.0, 1e-12);
  const Vec3 n = Vec3{-0.2, 0.1, 1.0} * (1.0 / std::sqrt(1.05));
  const GroundPlane tilted{{1.0, 2.0, 0.5}, n};
  const Vec3 toe{1.3, 1.8, 0.47};
  const Vec3 d = toe - tilted.point;
  EXPECT_NEAR(depth_normal_to_plane(toe, tilted), -(d.x * n.x + d.y * n.y + d.z * n.z) * 100.0, 1e-12);
}

TEST(StepLog, RoundTripIsBitExact) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<StepMeasurement> steps;
  for (int i = 0; i < 40; ++i) {
    steps.push_back({{u(rng) * 4, u(rng) * 6}, {u(rng) * 8, u(rng), 2 + rng() % 40}, i * 1.0 + u(rng)});
  }
  const auto text = write_step_log(steps);
  EXPECT_EQ(text.substr(0, kStepLogHeader.size()), kStepLogHeader);
  EXPECT_EQ(read_step_log(text), steps);
}

TEST(StepLog, RejectsMalformedRows) {
  const std::string h = std::string(kStepLogHeader) + "\n";
  EXPECT_THROW(read_step_log("bad header\n"), InvalidInput);
  EXPECT_THROW(read_step_log(h + "0,1,2,3,0.5\n"), InvalidInput);
  EXPECT_THROW(read_step_log(h + "0,1,2,3,1.5,4\n"), InvalidInput);
  EXPECT_THROW(read_step_log(h + "0,1,2,-3,0.5,4\n"), InvalidInput);
  EXPECT_THROW(read_step_log(h + "0,1,2,3,0.5,1\n"), InvalidInput);
  EXPECT_THROW(read_step_log(h + "0,x,2,3,0.5,4\n"), InvalidInput);
  EXPECT_EQ(read_step_log(h + "0,1,2,3,0.5,4\n\n").size(), 1u);
}

}  // namespace
