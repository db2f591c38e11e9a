#include "scoutnav/mapping/kernel.hpp"

#include <cmath>

#include "scoutnav/errors.hpp"

namespace scoutnav::mapping {

void KernelParams::validate() const {
  if (!(length_scale > 0.0) || !std::isfinite(length_scale)) {
    throw InvalidInput("kernel length scale must be positive");
  }
  if (!(noise_floor >= 0.0) || !std::isfinite(noise_floor)) {
    throw InvalidInput("kernel noise floor must be non-negative");
  }
  if (!(constant > 0.0) || !std::isfinite(constant)) {
    throw InvalidInput("kernel constant must be positive");
  }
}

double rbf_covariance(Vec2 a, Vec2 b, const KernelParams& p) {
  const double d2 = squared_norm(a - b);
  return p.constant * std::exp(-d2 / (2.0 * p.length_scale * p.length_scale));
}

double kernel_eval(Vec2 a, Vec2 b, const KernelParams& p) {
  return rbf_covariance(a, b, p) + (a == b ? p.noise_floor : 0.0);
}

}  // namespace scoutnav::mapping
