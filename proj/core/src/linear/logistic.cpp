#include "macrocast/linear/logistic.hpp"

#include <cmath>

#include "macrocast/errors.hpp"
#include "macrocast/nn/activations.hpp"
#include "macrocast/train/adam.hpp"
#include "macrocast/train/loss.hpp"

namespace macrocast::linear {

namespace {

Eigen::VectorXd probs_of(const Eigen::MatrixXd& x, const Eigen::VectorXd& theta) {
  // theta = [w; b]
  const Eigen::Index d = x.cols();
  Eigen::VectorXd z = x * theta.head(d);
  z.array() += theta(d);
  return z.unaryExpr([](double v) { return nn::sigmoid_scalar(v); });
}

double objective_of(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                    const Eigen::VectorXd& theta, double lambda) {
  const Eigen::Index d = x.cols();
  return train::bce_loss(probs_of(x, theta), y) + lambda * theta.head(d).squaredNorm();
}

Eigen::VectorXd gradient_of(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                            const Eigen::VectorXd& theta, double lambda) {
  const Eigen::Index n = x.rows(), d = x.cols();
  Eigen::VectorXd resid = (probs_of(x, theta) - y) / static_cast<double>(n);
  Eigen::VectorXd grad(d + 1);
  grad.head(d) = x.transpose() * resid + 2.0 * lambda * theta.head(d);
  grad(d) = resid.sum();
  return grad;
}

}  // namespace

LogisticParams fit_logistic(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda,
                            LogisticDiagnostics* diagnostics, double tol, long max_iterations) {
  if (x.rows() != y.size() || x.rows() == 0)
    throw StructuralError("fit_logistic: shape mismatch or empty input");
  if (lambda < 0.0) throw ConfigError("fit_logistic: lambda must be >= 0");

  const Eigen::Index d = x.cols();
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(d + 1);
  train::AdamState adam(d + 1, 0.05);

  double best_obj = objective_of(x, y, theta, lambda);
  Eigen::VectorXd best_theta = theta;
  long stall = 0;
  const long stall_limit = 200;

  LogisticDiagnostics diag;
  for (long it = 1; it <= max_iterations; ++it) {
    Eigen::VectorXd grad = gradient_of(x, y, theta, lambda);
    diag.grad_norm = grad.lpNorm<Eigen::Infinity>();
    diag.iterations = it - 1;
    if (diag.grad_norm < tol) {
      diag.converged = true;
      break;
    }
    adam.step(theta, grad);
    double obj = objective_of(x, y, theta, lambda);
    if (!std::isfinite(obj)) throw NumericError("fit_logistic: objective diverged");
    if (obj < best_obj - 1e-15) {
      best_obj = obj;
      best_theta = theta;
      stall = 0;
    } else if (++stall >= stall_limit) {
      // shrink the step and restart the moments from the best iterate
      theta = best_theta;
      adam = train::AdamState(d + 1, adam.lr * 0.5);
      stall = 0;
      if (adam.lr < 1e-14) break;  // step size exhausted; separation-style stall
    }
  }
  if (!diag.converged) {
    theta = best_theta;
    diag.iterations = max_iterations;
    diag.grad_norm = gradient_of(x, y, theta, lambda).lpNorm<Eigen::Infinity>();
    diag.warning = "did not reach gradient tolerance " + std::to_string(tol) +
                   " (possible separation at small lambda); returning best iterate";
  }

  LogisticParams params;
  params.weights = theta.head(d);
  params.intercept = theta(d);
  params.ridge_lambda = lambda;
  if (diagnostics != nullptr) *diagnostics = diag;
  return params;
}

Eigen::VectorXd predict_logistic(const LogisticParams& params, const Eigen::MatrixXd& x) {
  if (x.cols() != params.weights.size())
    throw StructuralError("predict_logistic: feature width mismatch");
  Eigen::VectorXd z = x * params.weights;
  z.array() += params.intercept;
  return z.unaryExpr([](double v) { return nn::sigmoid_scalar(v); });
}

Eigen::VectorXd marginal_effects(const LogisticParams& params, const Eigen::MatrixXd& x) {
  Eigen::VectorXd p = predict_logistic(params, x);
  double scale = (p.array() * (1.0 - p.array())).mean();
  return scale * params.weights;
}

}  // namespace macrocast::linear
