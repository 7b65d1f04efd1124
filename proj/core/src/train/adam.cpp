#include "macrocast/train/adam.hpp"

#include <cmath>

#include "macrocast/errors.hpp"

namespace macrocast::train {

void AdamState::step(Eigen::VectorXd& theta, const Eigen::VectorXd& grad) {
  if (theta.size() != m.size() || grad.size() != m.size())
    throw StructuralError("adam: size mismatch");
  ++step_count;
  m = beta1 * m + (1.0 - beta1) * grad;
  v = beta2 * v + (1.0 - beta2) * grad.cwiseProduct(grad);
  const double c1 = 1.0 - std::pow(beta1, static_cast<double>(step_count));
  const double c2 = 1.0 - std::pow(beta2, static_cast<double>(step_count));
  theta.array() -=
      lr * (m.array() / c1) / ((v.array() / c2).sqrt() + eps);
}

double clip_global_norm(Eigen::VectorXd& grad, double max_norm) {
  const double norm = grad.norm();
  if (max_norm > 0.0 && norm > max_norm) grad *= max_norm / norm;
  return norm;
}

}  // namespace macrocast::train
