#pragma once

#include <Eigen/Core>
#include <string>

namespace macrocast::linear {

// Logistic classifier p = sigmoid(x.w + b), optionally ridge-penalized:
// objective = mean BCE + lambda * |w|^2 (intercept unpenalized).
struct LogisticParams {
  Eigen::VectorXd weights;
  double intercept = 0.0;
  double ridge_lambda = 0.0;
};

struct LogisticDiagnostics {
  bool converged = false;
  long iterations = 0;
  double grad_norm = 0.0;  // final sup-norm
  std::string warning;     // set when iteration cap hits (e.g. separation at lambda 0)
};

// Full-batch Adam on the convex objective until the gradient sup-norm drops
// below tol. A fixed learning rate orbits the optimum at O(lr), so the rate
// halves whenever progress stalls; that makes the tolerance reachable.
// Non-convergence within max_iterations returns the best iterate with a
// warning instead of throwing (perfect separation at lambda = 0 never
// converges).
LogisticParams fit_logistic(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda,
                            LogisticDiagnostics* diagnostics = nullptr, double tol = 1e-8,
                            long max_iterations = 50000);

Eigen::VectorXd predict_logistic(const LogisticParams& params, const Eigen::MatrixXd& x);

// Average marginal effect of each feature on the recession probability:
// mean over rows of p(1-p) * w_j.
Eigen::VectorXd marginal_effects(const LogisticParams& params, const Eigen::MatrixXd& x);

}  // namespace macrocast::linear
