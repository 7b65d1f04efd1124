#pragma once

#include <Eigen/Core>

#include "macrocast/explain/kernel_shap.hpp"  // PredictFn
#include "macrocast/rng.hpp"

namespace macrocast::explain {

struct LimeResult {
  Eigen::VectorXd coefficients;  // sparse local surrogate weights (raw feature space)
  double intercept = 0;
  Eigen::VectorXd proximity;  // per-sample kernel weight actually used
};

// Local surrogate: perturbations drawn feature-wise from
// Normal(train_mean_j, train_sd_j) with the instance itself as the first
// sample, proximity exp(-d^2 / width^2) with d the Euclidean distance in
// standardized space, and a proximity-weighted lasso (coordinate descent,
// unpenalized intercept, fixed light penalty) fit on raw feature values.
// Only the n_kept largest-magnitude coefficients survive; the rest zero out.
//
// Preconditions: n_samples >= 10 * n_kept (ConfigError); any zero train sd ->
// DataError naming the feature index.
LimeResult lime_explain(const PredictFn& predict, const Eigen::VectorXd& instance,
                        const Eigen::VectorXd& train_mean, const Eigen::VectorXd& train_sd,
                        int n_samples, double kernel_width, int n_kept, Rng& rng);

// weighted lasso used by the surrogate; exposed for direct testing
Eigen::VectorXd weighted_lasso(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                               const Eigen::VectorXd& sample_weights, double l1_penalty,
                               double& intercept_out, int max_sweeps = 1000,
                               double tol = 1e-10);

}  // namespace macrocast::explain
