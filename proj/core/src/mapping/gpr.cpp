#include "scoutnav/mapping/gpr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "scoutnav/errors.hpp"

namespace scoutnav::mapping {

GprModel GprModel::fit(std::vector<Observation> observations, const KernelParams& params,
                       double jitter) {
  params.validate();
  if (observations.empty()) {
    throw InvalidInput("GPR fit needs at least one observation");
  }
  if (!(jitter >= 0.0)) {
    throw InvalidInput("jitter must be non-negative");
  }
  for (const auto& o : observations) {
    if (!std::isfinite(o.position.x) || !std::isfinite(o.position.y) || !std::isfinite(o.value)) {
      throw InvalidInput("GPR observations must be finite");
    }
  }

  const auto n = static_cast<Eigen::Index>(observations.size());
  double sum = 0.0;
  for (const auto& o : observations) sum += o.value;
  const double mean = sum / static_cast<double>(n);

  Eigen::MatrixXd k(n, n);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    y(i) = observations[i].value - mean;
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double c = rbf_covariance(observations[i].position, observations[j].position, params);
      k(i, j) = c;
      k(j, i) = c;
    }
    k(i, i) += params.noise_floor;
  }

  GprModel model;
  model.params_ = params;
  model.mean_offset_ = mean;
  model.base_jitter_ = jitter;

  double j = jitter;
  for (int attempt = 0; attempt <= 3; ++attempt, j = (j > 0.0 ? j * 10.0 : 1e-8)) {
    Eigen::MatrixXd kj = k;
    kj.diagonal().array() += j;
    model.factor_.compute(kj);
    if (model.factor_.info() == Eigen::Success) {
      model.jitter_ = j;
      model.weights_ = model.factor_.solve(y);
      model.observations_ = std::move(observations);
      return model;
    }
  }
  throw IllConditionedError("GPR covariance is not positive definite after jitter escalation");
}

Prediction GprModel::predict(Vec2 query) const {
  const Vec2 q[1] = {query};
  return predict(std::span<const Vec2>(q)).front();
}

std::vector<Prediction> GprModel::predict(std::span<const Vec2> queries) const {
  const auto n = static_cast<Eigen::Index>(observations_.size());
  const auto m = static_cast<Eigen::Index>(queries.size());
  Eigen::MatrixXd cross(n, m);
  for (Eigen::Index q = 0; q < m; ++q) {
    for (Eigen::Index i = 0; i < n; ++i) {
      cross(i, q) = rbf_covariance(observations_[i].position, queries[q], params_);
    }
  }
  const Eigen::VectorXd means = cross.transpose() * weights_;
  factor_.matrixL().solveInPlace(cross);

  std::vector<Prediction> out(queries.size());
  for (Eigen::Index q = 0; q < m; ++q) {
    const double explained = cross.col(q).squaredNorm();
    out[q].mean = means(q) + mean_offset_;
    out[q].variance = std::max(0.0, params_.constant - explained);
  }
  return out;
}

GprModel GprModel::update(std::span<const Observation> additions) const {
  std::vector<Observation> all = observations_;
  all.insert(all.end(), additions.begin(), additions.end());
  return fit(std::move(all), params_, base_jitter_);
}

double GprModel::log_marginal_likelihood() const {
  const auto n = static_cast<double>(observations_.size());
  Eigen::VectorXd y(static_cast<Eigen::Index>(observations_.size()));
  for (std::size_t i = 0; i < observations_.size(); ++i) {
    y(static_cast<Eigen::Index>(i)) = observations_[i].value - mean_offset_;
  }
  const double fit_term = y.dot(weights_);
  const double log_det = 2.0 * factor_.matrixLLT().diagonal().array().log().sum();
  return -0.5 * fit_term - 0.5 * log_det - 0.5 * n * std::log(2.0 * std::numbers::pi);
}

KernelParams select_hyperparameters(const std::vector<Observation>& observations,
                                    const KernelParams& base) {
  constexpr double kLengthScales[] = {0.25, 0.5, 1.0, 2.0};
  constexpr double kConstants[] = {1.0, 5.0, 10.0};
  KernelParams best = base;
  double best_lml = -std::numeric_limits<double>::infinity();
  for (double l : kLengthScales) {
    for (double c : kConstants) {
      KernelParams p = base;
      p.length_scale = l;
      p.constant = c;
      try {
        const double lml = GprModel::fit(observations, p).log_marginal_likelihood();
        if (lml > best_lml) {
          best_lml = lml;
          best = p;
        }
      } catch (const IllConditionedError&) {
        // skip this grid point
      }
    }
  }
  return best;
}

}  // namespace scoutnav::mapping
