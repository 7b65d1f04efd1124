#pragma once

#include <Eigen/Core>
#include <memory>
#include <string>
#include <vector>

#include "macrocast/dataset/supervised.hpp"
#include "macrocast/nn/dropout.hpp"
#include "macrocast/nn/params.hpp"
#include "macrocast/rng.hpp"

namespace macrocast::nn {

// Opaque forward-pass state handed back to backward(). Carries an identity
// stamp so a cache from another model or batch is rejected instead of
// silently producing wrong gradients.
struct ForwardCache {
  virtual ~ForwardCache() = default;
  const void* owner = nullptr;
  Eigen::Index batch = -1;
};

struct ModelArch {
  std::string kind;  // "ffn" | "lstm" | "gru"
  int input_features = 0;
  int units = 0;               // recurrent kinds
  int layers = 0;              // recurrent kinds
  std::vector<int> hidden;     // ffn hidden widths
  std::uint64_t init_seed = 0;
};

// Binary classifier over 12-month feature windows. forward() returns
// recession probabilities; backward() takes dL/dlogit per instance and
// accumulates parameter gradients into a flat buffer.
class Model {
public:
  virtual ~Model() = default;

  virtual Eigen::VectorXd forward(const dataset::SequenceTensor& x,
                                  const DropoutPlan* plan = nullptr,
                                  std::unique_ptr<ForwardCache>* cache_out = nullptr) const = 0;

  virtual void backward(const ForwardCache& cache, const Eigen::VectorXd& dlogit,
                        Eigen::VectorXd& grad) const = 0;

  virtual DropoutPlan make_dropout_plan(Eigen::Index batch, double dropout,
                                        double recurrent_dropout, Rng& rng) const = 0;

  virtual ModelArch arch() const = 0;

  ParameterStore& params() { return params_; }
  const ParameterStore& params() const { return params_; }

protected:
  void check_cache(const ForwardCache& cache, const void* self) const;
  ParameterStore params_;
};

// convenience for explainers and tests: probabilities from flat
// (features*12) x instances input
Eigen::VectorXd predict_flat(const Model& model, const Eigen::MatrixXd& flat);

}  // namespace macrocast::nn
