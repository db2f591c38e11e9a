#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <span>
#include <vector>

#include "scoutnav/mapping/kernel.hpp"

namespace scoutnav::mapping {

struct Observation {
  Vec2 position;
  double value = 0.0;
};

struct Prediction {
  double mean = 0.0;
  double variance = 0.0;
};

inline constexpr double kDefaultJitter = 1e-8;

/// Exact Gaussian-process regression on mean-centered values.
///
/// The white-noise term is attached to the observations (diagonal of the
/// training covariance); cross and test covariances use the noise-free RBF,
/// so predicted variance is the latent-field uncertainty and never exceeds C.
/// Immutable once fitted.
class GprModel {
 public:
  /// Factorizes K + jitter * I.  On failure the jitter grows tenfold, up to
  /// three times, before IllConditionedError is thrown.
  static GprModel fit(std::vector<Observation> observations, const KernelParams& params,
                      double jitter = kDefaultJitter);

  Prediction predict(Vec2 query) const;
  std::vector<Prediction> predict(std::span<const Vec2> queries) const;

  /// Refit on the union of the current and new observations.
  GprModel update(std::span<const Observation> additions) const;

  double log_marginal_likelihood() const;

  std::span<const Observation> observations() const { return observations_; }
  const KernelParams& params() const { return params_; }
  double mean_offset() const { return mean_offset_; }
  double jitter() const { return jitter_; }

 private:
  GprModel() = default;

  std::vector<Observation> observations_;
  KernelParams params_;
  double mean_offset_ = 0.0;
  double jitter_ = kDefaultJitter;
  double base_jitter_ = kDefaultJitter;
  Eigen::LLT<Eigen::MatrixXd> factor_;
  Eigen::VectorXd weights_;  // (K + jitter I)^-1 (y - mean)
};

/// Log-marginal-likelihood grid search over l in {0.25, 0.5, 1, 2} and
/// C in {1, 5, 10}; the noise floor is kept from `base`.
KernelParams select_hyperparameters(const std::vector<Observation>& observations,
                                    const KernelParams& base);

}  // namespace scoutnav::mapping
