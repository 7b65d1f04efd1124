#pragma once

#include "macrocast/nn/model.hpp"

namespace macrocast::nn {

enum class CellKind { Lstm, Gru };

// One LSTM step over a batch (columns are instances). W stacks the four gate
// blocks row-wise in the order [forget, input, candidate, output], each
// units x (units + input_width), acting on the concatenation [h_prev; x].
// The carry C_t = f .* C_{t-1} + i .* tanh-candidate uses the raw previous
// carry; dropout-masked h/x only ever enter through the gates.
struct LstmStepResult {
  Eigen::MatrixXd concat;  // [h_prev_masked; x_masked], (units+in) x batch
  Eigen::MatrixXd f, i, g, o;  // post-activation gates, units x batch
  Eigen::MatrixXd c, tanh_c, h;
};
LstmStepResult lstm_step(const Eigen::Ref<const Eigen::MatrixXd>& W,
                         const Eigen::Ref<const Eigen::VectorXd>& b,
                         const Eigen::MatrixXd& h_prev_masked, const Eigen::MatrixXd& x_masked,
                         const Eigen::MatrixXd& c_prev);

// One GRU step. Wg stacks [reset; update] gate blocks; Wc is the candidate
// block acting on [r .* h_prev_masked; x]. The new state is the convex
// combination h = (1-z) .* h_prev_raw + z .* candidate, carrying the raw
// (unmasked) previous state.
struct GruStepResult {
  Eigen::MatrixXd concat_g;  // [h_prev_masked; x_masked]
  Eigen::MatrixXd concat_c;  // [r .* h_prev_masked; x_masked]
  Eigen::MatrixXd r, z, cand, h;
};
GruStepResult gru_step(const Eigen::Ref<const Eigen::MatrixXd>& Wg,
                       const Eigen::Ref<const Eigen::VectorXd>& bg,
                       const Eigen::Ref<const Eigen::MatrixXd>& Wc,
                       const Eigen::Ref<const Eigen::VectorXd>& bc,
                       const Eigen::MatrixXd& h_prev_masked, const Eigen::MatrixXd& h_prev_raw,
                       const Eigen::MatrixXd& x_masked);

// Stacked LSTM/GRU classifier: 1 or 2 recurrent layers unrolled over the
// 12-month window, sigmoid readout from the top layer's final hidden state.
// Backward is exact backpropagation through time over the cached unroll.
class RecurrentModel : public Model {
public:
  RecurrentModel(CellKind kind, int input_features, int units, int layers, std::uint64_t seed);

  Eigen::VectorXd forward(const dataset::SequenceTensor& x, const DropoutPlan* plan,
                          std::unique_ptr<ForwardCache>* cache_out) const override;
  void backward(const ForwardCache& cache, const Eigen::VectorXd& dlogit,
                Eigen::VectorXd& grad) const override;
  DropoutPlan make_dropout_plan(Eigen::Index batch, double dropout, double recurrent_dropout,
                                Rng& rng) const override;
  ModelArch arch() const override;

  CellKind kind() const { return kind_; }

private:
  CellKind kind_;
  int input_features_, units_, layers_;
  std::uint64_t seed_;
  // per layer: LSTM {W, b}; GRU {Wg, bg, Wc, bc}; plus out.W / out.b
  std::vector<std::size_t> w_idx_, b_idx_, wc_idx_, bc_idx_;
  std::size_t out_w_, out_b_;

  int layer_input_width(int layer) const { return layer == 0 ? input_features_ : units_; }
};

}  // namespace macrocast::nn
