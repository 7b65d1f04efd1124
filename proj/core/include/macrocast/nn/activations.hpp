#pragma once

#include <Eigen/Core>
#include <cmath>

namespace macrocast::nn {

inline double sigmoid_scalar(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

inline Eigen::MatrixXd sigmoid(const Eigen::MatrixXd& x) {
  return x.unaryExpr([](double v) { return sigmoid_scalar(v); });
}

inline Eigen::MatrixXd tanh_mat(const Eigen::MatrixXd& x) {
  return x.array().tanh().matrix();
}

inline Eigen::MatrixXd relu(const Eigen::MatrixXd& x) {
  return x.cwiseMax(0.0);
}

}  // namespace macrocast::nn
