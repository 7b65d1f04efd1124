#include "macrocast/explain/lime.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "macrocast/errors.hpp"

namespace macrocast::explain {

Eigen::VectorXd weighted_lasso(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                               const Eigen::VectorXd& sample_weights, double l1_penalty,
                               double& intercept_out, int max_sweeps, double tol) {
  const Eigen::Index n = x.rows(), d = x.cols();
  if (y.size() != n || sample_weights.size() != n)
    throw StructuralError("weighted_lasso: shape mismatch");
  const double wsum = sample_weights.sum();
  if (!(wsum > 0.0)) throw NumericError("weighted_lasso: weights sum to zero");
  Eigen::VectorXd w = sample_weights / wsum;

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(d);
  double beta0 = w.dot(y);
  Eigen::VectorXd resid = y.array() - beta0;  // y - beta0 - x*beta

  Eigen::VectorXd col_sq(d);
  for (Eigen::Index j = 0; j < d; ++j) col_sq(j) = w.dot(x.col(j).cwiseAbs2());

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double max_delta = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) {
      if (col_sq(j) == 0.0) continue;  // constant-zero column stays out
      const double old = beta(j);
      // rho = weighted correlation of column j with the residual excluding j
      double rho = w.dot(x.col(j).cwiseProduct(resid)) + col_sq(j) * old;
      double soft = std::abs(rho) <= l1_penalty / 2.0
                        ? 0.0
                        : (rho > 0 ? rho - l1_penalty / 2.0 : rho + l1_penalty / 2.0);
      const double updated = soft / col_sq(j);
      if (updated != old) {
        resid += x.col(j) * (old - updated);
        beta(j) = updated;
        max_delta = std::max(max_delta, std::abs(updated - old));
      }
    }
    const double new_beta0 = beta0 + w.dot(resid);
    if (new_beta0 != beta0) {
      resid.array() -= new_beta0 - beta0;
      max_delta = std::max(max_delta, std::abs(new_beta0 - beta0));
      beta0 = new_beta0;
    }
    if (max_delta < tol) break;
  }
  intercept_out = beta0;
  return beta;
}

LimeResult lime_explain(const PredictFn& predict, const Eigen::VectorXd& instance,
                        const Eigen::VectorXd& train_mean, const Eigen::VectorXd& train_sd,
                        int n_samples, double kernel_width, int n_kept, Rng& rng) {
  const Eigen::Index k = instance.size();
  if (train_mean.size() != k || train_sd.size() != k)
    throw StructuralError("lime: stats shape mismatch");
  if (n_kept < 1) throw ConfigError("lime: n_kept must be >= 1");
  if (n_samples < 10 * std::min<Eigen::Index>(n_kept, k))
    throw ConfigError("lime: n_samples must be at least 10x the kept feature count");
  if (!(kernel_width > 0.0)) kernel_width = 0.75 * std::sqrt(static_cast<double>(k));
  for (Eigen::Index j = 0; j < k; ++j)
    if (!(train_sd(j) > 0.0))
      throw DataError("lime: zero-variance feature at index " + std::to_string(j));

  Eigen::MatrixXd samples(n_samples, k);
  samples.row(0) = instance.transpose();
  for (Eigen::Index i = 1; i < n_samples; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      samples(i, j) = rng.normal(train_mean(j), train_sd(j));

  Eigen::VectorXd preds = predict(samples);
  if (preds.size() != n_samples)
    throw StructuralError("lime: predictor returned wrong row count");

  LimeResult res;
  res.proximity.resize(n_samples);
  for (Eigen::Index i = 0; i < n_samples; ++i) {
    double d2 = ((samples.row(i).transpose() - instance).array() / train_sd.array())
                    .square()
                    .sum();
    res.proximity(i) = std::exp(-d2 / (kernel_width * kernel_width));
  }

  // fixed light penalty: the surrogate should track a locally linear model
  // almost exactly while still zeroing pure-noise coefficients
  const double l1_penalty = 1e-4;
  res.coefficients =
      weighted_lasso(samples, preds, res.proximity, l1_penalty, res.intercept);

  if (n_kept < k) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      double ma = std::abs(res.coefficients(a)), mb = std::abs(res.coefficients(b));
      if (ma != mb) return ma > mb;
      return a < b;
    });
    Eigen::VectorXd sparse = Eigen::VectorXd::Zero(k);
    for (int i = 0; i < n_kept; ++i)
      sparse(order[static_cast<std::size_t>(i)]) =
          res.coefficients(order[static_cast<std::size_t>(i)]);
    res.coefficients = sparse;
  }
  return res;
}

}  // namespace macrocast::explain
