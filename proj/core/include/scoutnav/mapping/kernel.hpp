#pragma once

#include "scoutnav/geometry.hpp"

namespace scoutnav::mapping {

/// Constant-scaled squared-exponential kernel plus white noise.
struct KernelParams {
  double length_scale = 0.5;  ///< l, m
  double noise_floor = 0.2;   ///< n, additive variance on observations
  double constant = 5.0;      ///< C, prior variance

  void validate() const;
  friend constexpr bool operator==(const KernelParams&, const KernelParams&) = default;
};

/// C * exp(-d^2 / (2 l^2)), the noise-free part.
double rbf_covariance(Vec2 a, Vec2 b, const KernelParams& p);

/// Full kernel: rbf_covariance + n when the two points coincide.
double kernel_eval(Vec2 a, Vec2 b, const KernelParams& p);

}  // namespace scoutnav::mapping
