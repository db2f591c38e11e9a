#include "scoutnav/proprioception/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace scoutnav::proprioception {

namespace {

// Squared error of a hinge f = k * max(0, z - z_b) over [first, end): zero
// force before b, a through-origin line after it.
double hinge_sse(std::span<const terrain::ForceSample> s, std::size_t first, std::size_t b, std::size_t end) {
  const double z0 = s[b].depth_cm;
  double szz = 0.0;
  double szf = 0.0;
  for (std::size_t k = b; k < end; ++k) {
    szz += (s[k].depth_cm - z0) * (s[k].depth_cm - z0);
    szf += (s[k].depth_cm - z0) * s[k].force_n;
  }
  if (szz == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  const double slope = szf / szz;
  double sse = 0.0;
  for (std::size_t k = first; k < b; ++k) {
    sse += s[k].force_n * s[k].force_n;
  }
  for (std::size_t k = b; k < end; ++k) {
    const double r = s[k].force_n - slope * (s[k].depth_cm - z0);
    sse += r * r;
  }
  return sse;
}

// Earliest touchdown in [first, last] within two residual variances of the
// best hinge.
std::size_t choose_touchdown(std::span<const terrain::ForceSample> s, std::size_t first, std::size_t last,
                             std::size_t end) {
  std::vector<double> sse;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t b = first; b <= last; ++b) {
    sse.push_back(hinge_sse(s, first, b, end));
    best = std::min(best, sse.back());
  }
  if (!std::isfinite(best)) {
    return last;
  }
  const double dof = std::max(1.0, static_cast<double>(end - first) - 2.0);
  const double margin = 2.0 * best / dof;
  for (std::size_t b = first; b <= last; ++b) {
    if (sse[b - first] <= best + margin) {
      return b;
    }
  }
  return last;
}

}  // namespace

terrain::ForceDepthTrace extract_penetration_phase(const terrain::ForceDepthTrace& trace,
                                                   double contact_threshold) {
  if (!(contact_threshold >= 0.0)) {
    throw InvalidInput("contact threshold must be non-negative");
  }
  const auto s = trace.samples();
  const std::size_t n = s.size();

  std::size_t best_begin = 0;
  std::size_t best_len = 0;
  std::size_t i = 0;
  while (i < n) {
    if (s[i].force_n < contact_threshold) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < n && s[j].force_n >= contact_threshold && s[j].depth_cm > s[j - 1].depth_cm) {
      ++j;
    }
    if (j - i > best_len) {
      best_begin = i;
      best_len = j - i;
    }
    i = j;
  }
  if (best_len == 0) {
    throw EmptyPhaseError("no sample reaches the contact threshold");
  }

  const std::size_t end = best_begin + best_len;
  std::size_t first = best_begin;
  while (first > 0 && s[first - 1].depth_cm < s[first].depth_cm) {
    --first;
  }
  const std::size_t begin = choose_touchdown(s, first, best_begin, end);
  if (end - begin < 2) {
    throw EmptyPhaseError("penetration phase has fewer than two samples");
  }

  const double z0 = s[begin].depth_cm;
  std::vector<terrain::ForceSample> out;
  out.reserve(end - begin);
  for (std::size_t k = begin; k < end; ++k) {
    out.push_back({s[k].depth_cm - z0, s[k].force_n});
  }
  return terrain::ForceDepthTrace(std::move(out), trace.probe(), trace.world_position());
}

ResistanceEstimate fit_resistance(std::span<const terrain::ForceSample> segment, double area_cm2) {
  if (segment.size() < 2) {
    throw InvalidInput("fit needs at least two samples");
  }
  if (!(area_cm2 > 0.0)) {
    throw InvalidInput("probe area must be positive");
  }
  double szz = 0.0;
  double szf = 0.0;
  double sf = 0.0;
  for (const auto& p : segment) {
    szz += p.depth_cm * p.depth_cm;
    szf += p.depth_cm * p.force_n;
    sf += p.force_n;
  }
  if (szz == 0.0) {
    throw SingularFitError("all penetration depths are zero");
  }
  const double alpha = std::max(0.0, szf / (area_cm2 * szz));
  const double mean_f = sf / static_cast<double>(segment.size());

  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (const auto& p : segment) {
    const double r = p.force_n - area_cm2 * alpha * p.depth_cm;
    const double d = p.force_n - mean_f;
    ss_res += r * r;
    ss_tot += d * d;
  }
  double r2;
  if (ss_tot > 0.0) {
    r2 = 1.0 - ss_res / ss_tot;
  } else {
    r2 = ss_res == 0.0 ? 1.0 : 0.0;
  }
  return {alpha, std::clamp(r2, 0.0, 1.0), segment.size()};
}

}  // namespace scoutnav::proprioception
