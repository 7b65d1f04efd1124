#include "macrocast/nn/ffn.hpp"

#include <cmath>

#include "macrocast/errors.hpp"
#include "macrocast/nn/activations.hpp"

namespace macrocast::nn {

namespace {
struct FfnCache : ForwardCache {
  std::vector<Eigen::MatrixXd> inputs;      // input seen by each layer, output layer last
  std::vector<Eigen::MatrixXd> relu_masks;  // 0/1 per hidden layer
  const DropoutPlan* plan = nullptr;        // must outlive the backward call
};
}  // namespace

FfnModel::FfnModel(int input_features, std::vector<int> hidden, std::uint64_t seed)
    : input_features_(input_features), hidden_(std::move(hidden)), seed_(seed) {
  if (input_features_ < 1) throw ConfigError("ffn: input_features must be >= 1");
  if (hidden_.size() > 2) throw ConfigError("ffn: at most 2 hidden layers");
  for (int h : hidden_)
    if (h < 1) throw ConfigError("ffn: hidden width must be >= 1");

  const int flat_width = input_features_ * dataset::kSequenceLength;
  int in = flat_width;
  for (std::size_t i = 0; i < hidden_.size(); ++i) {
    w_idx_.push_back(params_.add("h" + std::to_string(i) + ".W", hidden_[i], in, true));
    b_idx_.push_back(params_.add("h" + std::to_string(i) + ".b", hidden_[i], 1, false));
    in = hidden_[i];
  }
  w_idx_.push_back(params_.add("out.W", 1, in, true));
  b_idx_.push_back(params_.add("out.b", 1, 1, false));
  params_.finalize();

  Rng rng(seed);
  for (std::size_t l = 0; l < w_idx_.size(); ++l) {
    auto W = params_.matrix(w_idx_[l]);
    double limit = std::sqrt(6.0 / static_cast<double>(W.rows() + W.cols()));
    for (Eigen::Index c = 0; c < W.cols(); ++c)
      for (Eigen::Index r = 0; r < W.rows(); ++r) W(r, c) = rng.uniform(-limit, limit);
    // biases stay zero
  }
}

Eigen::VectorXd FfnModel::forward_flat(const Eigen::MatrixXd& flat, const DropoutPlan* plan,
                                       std::unique_ptr<ForwardCache>* cache_out) const {
  if (flat.rows() != input_features_ * dataset::kSequenceLength)
    throw StructuralError("ffn: flat input width mismatch");

  auto cache = std::make_unique<FfnCache>();
  cache->owner = this;
  cache->batch = flat.cols();
  cache->plan = plan;

  Eigen::MatrixXd a = flat;
  for (std::size_t i = 0; i < hidden_.size(); ++i) {
    cache->inputs.push_back(a);
    Eigen::MatrixXd z =
        (params_.matrix(w_idx_[i]) * a).colwise() + params_.matrix(b_idx_[i]).col(0);
    cache->relu_masks.push_back(
        z.unaryExpr([](double v) { return v > 0.0 ? 1.0 : 0.0; }));
    a = relu(z);
    if (plan != nullptr && plan->active && i < plan->input_masks.size() &&
        plan->input_masks[i].size() > 0) {
      if (plan->input_masks[i].rows() != a.rows() || plan->input_masks[i].cols() != a.cols())
        throw StructuralError("ffn: dropout mask shape mismatch");
      a = a.cwiseProduct(plan->input_masks[i]);
    }
  }
  cache->inputs.push_back(a);
  Eigen::RowVectorXd logit = (params_.matrix(w_idx_.back()) * a).row(0);
  logit.array() += params_.flat()(params_.spec("out.b").offset);
  Eigen::VectorXd probs(flat.cols());
  for (Eigen::Index j = 0; j < probs.size(); ++j) probs(j) = sigmoid_scalar(logit(j));

  if (cache_out != nullptr) *cache_out = std::move(cache);
  return probs;
}

Eigen::VectorXd FfnModel::forward(const dataset::SequenceTensor& x, const DropoutPlan* plan,
                                  std::unique_ptr<ForwardCache>* cache_out) const {
  return forward_flat(dataset::flatten(x), plan, cache_out);
}

void FfnModel::backward(const ForwardCache& cache_base, const Eigen::VectorXd& dlogit,
                        Eigen::VectorXd& grad) const {
  check_cache(cache_base, this);
  const auto& cache = dynamic_cast<const FfnCache&>(cache_base);
  if (dlogit.size() != cache.batch) throw StructuralError("ffn backward: batch mismatch");
  if (grad.size() != params_.size()) throw StructuralError("ffn backward: grad size mismatch");

  Eigen::MatrixXd dz = dlogit.transpose();  // 1 x batch
  {
    auto dW = params_.matrix_in(grad, w_idx_.back());
    auto db = params_.matrix_in(grad, b_idx_.back());
    dW += dz * cache.inputs.back().transpose();
    db(0, 0) += dz.sum();
  }
  Eigen::MatrixXd da = params_.matrix(w_idx_.back()).transpose() * dz;

  for (std::size_t i = hidden_.size(); i-- > 0;) {
    const auto* plan = cache.plan;
    if (plan != nullptr && plan->active && i < plan->input_masks.size() &&
        plan->input_masks[i].size() > 0)
      da = da.cwiseProduct(plan->input_masks[i]);
    Eigen::MatrixXd dzi = da.cwiseProduct(cache.relu_masks[i]);
    auto dW = params_.matrix_in(grad, w_idx_[i]);
    auto db = params_.matrix_in(grad, b_idx_[i]);
    dW += dzi * cache.inputs[i].transpose();
    db.col(0) += dzi.rowwise().sum();
    if (i > 0) da = params_.matrix(w_idx_[i]).transpose() * dzi;
  }
}

DropoutPlan FfnModel::make_dropout_plan(Eigen::Index batch, double dropout,
                                        double recurrent_dropout, Rng& rng) const {
  (void)recurrent_dropout;  // no recurrent state here
  DropoutPlan plan;
  if (dropout == 0.0 || hidden_.empty()) return plan;
  plan.active = true;
  for (int h : hidden_) plan.input_masks.push_back(dropout_mask(h, batch, dropout, rng));
  return plan;
}

ModelArch FfnModel::arch() const {
  ModelArch a;
  a.kind = "ffn";
  a.input_features = input_features_;
  a.hidden = hidden_;
  a.init_seed = seed_;
  return a;
}

}  // namespace macrocast::nn
