#pragma once

#include "macrocast/nn/model.hpp"

namespace macrocast::nn {

// Fully connected ReLU network over the flattened 12-month window, sigmoid
// output. hidden may be empty (plain logistic form, used by tests), one, or
// two layers. Dropout applies after each hidden ReLU; recurrent dropout is
// meaningless here and ignored.
class FfnModel : public Model {
public:
  FfnModel(int input_features, std::vector<int> hidden, std::uint64_t seed);

  Eigen::VectorXd forward(const dataset::SequenceTensor& x, const DropoutPlan* plan,
                          std::unique_ptr<ForwardCache>* cache_out) const override;
  void backward(const ForwardCache& cache, const Eigen::VectorXd& dlogit,
                Eigen::VectorXd& grad) const override;
  DropoutPlan make_dropout_plan(Eigen::Index batch, double dropout, double recurrent_dropout,
                                Rng& rng) const override;
  ModelArch arch() const override;

  // flat input path shared with the explainers
  Eigen::VectorXd forward_flat(const Eigen::MatrixXd& flat, const DropoutPlan* plan = nullptr,
                               std::unique_ptr<ForwardCache>* cache_out = nullptr) const;

private:
  int input_features_;
  std::vector<int> hidden_;
  std::uint64_t seed_;
  std::vector<std::size_t> w_idx_, b_idx_;  // per layer, output last
};

}  // namespace macrocast::nn
