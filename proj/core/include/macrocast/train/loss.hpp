#pragma once

#include <Eigen/Core>

namespace macrocast::train {

// Probabilities are clamped to [1e-12, 1 - 1e-12] before the logs.
inline constexpr double kProbClamp = 1e-12;

// Mean binary cross-entropy: -mean(y ln p + (1-y) ln(1-p)).
double bce_loss(const Eigen::VectorXd& probs, const Eigen::VectorXd& targets);

// Gradient of mean BCE with respect to the pre-sigmoid logits: (p - y) / n.
Eigen::VectorXd bce_dlogit(const Eigen::VectorXd& probs, const Eigen::VectorXd& targets);

// L2 penalty lambda * sum(w^2) over weight entries only (mask 1 = weight).
double l2_penalty(const Eigen::VectorXd& flat_params, const Eigen::VectorXd& weight_mask,
                  double lambda);
// adds d/dw = 2 lambda w to the gradient (weights only)
void add_l2_gradient(const Eigen::VectorXd& flat_params, const Eigen::VectorXd& weight_mask,
                     double lambda, Eigen::VectorXd& grad);

}  // namespace macrocast::train
