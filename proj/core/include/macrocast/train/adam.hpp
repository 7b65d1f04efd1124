#pragma once

#include <Eigen/Core>

namespace macrocast::train {

// Adam with the usual bias-corrected moments:
//   m <- b1 m + (1-b1) g;  v <- b2 v + (1-b2) g^2
//   theta <- theta - lr * m_hat / (sqrt(v_hat) + eps)
struct AdamState {
  double lr = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  long step_count = 0;
  Eigen::VectorXd m;  // first moment
  Eigen::VectorXd v;  // second moment, elementwise >= 0

  explicit AdamState(Eigen::Index n = 0, double lr_ = 0.001)
      : lr(lr_), m(Eigen::VectorXd::Zero(n)), v(Eigen::VectorXd::Zero(n)) {}

  void step(Eigen::VectorXd& theta, const Eigen::VectorXd& grad);
};

// Scales grad in place so its Euclidean norm is at most max_norm.
// Returns the pre-clip norm.
double clip_global_norm(Eigen::VectorXd& grad, double max_norm);

}  // namespace macrocast::train
