#pragma once

#include <Eigen/Core>
#include <functional>

#include "macrocast/rng.hpp"

namespace macrocast::explain {

// Black-box batch predictor: rows are flattened instances, one probability
// per row.
using PredictFn = std::function<Eigen::VectorXd(const Eigen::MatrixXd&)>;

struct ShapResult {
  Eigen::VectorXd phi;     // one attribution per feature
  double base_value = 0;   // mean prediction over the background
  double fx = 0;           // prediction at the explained instance
};

// Shapley kernel weight for a coalition of size s out of k features:
// (k-1) / (C(k,s) * s * (k-s)). Infinite at s = 0 and s = k.
double shapley_kernel_weight(int k, int s);

// KernelSHAP: sampled coalitions (sizes drawn by per-size kernel mass, the
// empty and full coalitions always included once), masked features replaced
// by background rows with predictions averaged over the background, and a
// weighted least squares solve constrained so that sum(phi) = fx - base
// exactly (efficiency at machine precision).
//
// Rank-deficient coalition samples -> NumericError suggesting more
// coalitions. n_coalitions must be at least n_features + 2.
ShapResult kernel_shap(const PredictFn& predict, const Eigen::VectorXd& instance,
                       const Eigen::MatrixXd& background, int n_coalitions, Rng& rng);

}  // namespace macrocast::explain
