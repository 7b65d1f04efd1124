#include "macrocast/train/loss.hpp"

#include <cmath>

#include "macrocast/errors.hpp"

namespace macrocast::train {

double bce_loss(const Eigen::VectorXd& probs, const Eigen::VectorXd& targets) {
  if (probs.size() != targets.size() || probs.size() == 0)
    throw StructuralError("bce_loss: size mismatch or empty input");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    double p = std::min(std::max(probs(i), kProbClamp), 1.0 - kProbClamp);
    sum += targets(i) * std::log(p) + (1.0 - targets(i)) * std::log(1.0 - p);
  }
  return -sum / static_cast<double>(probs.size());
}

Eigen::VectorXd bce_dlogit(const Eigen::VectorXd& probs, const Eigen::VectorXd& targets) {
  if (probs.size() != targets.size() || probs.size() == 0)
    throw StructuralError("bce_dlogit: size mismatch or empty input");
  return (probs - targets) / static_cast<double>(probs.size());
}

double l2_penalty(const Eigen::VectorXd& flat_params, const Eigen::VectorXd& weight_mask,
                  double lambda) {
  if (lambda == 0.0) return 0.0;
  return lambda * flat_params.cwiseProduct(weight_mask).squaredNorm();
}

void add_l2_gradient(const Eigen::VectorXd& flat_params, const Eigen::VectorXd& weight_mask,
                     double lambda, Eigen::VectorXd& grad) {
  if (lambda == 0.0) return;
  grad += 2.0 * lambda * flat_params.cwiseProduct(weight_mask);
}

}  // namespace macrocast::train
