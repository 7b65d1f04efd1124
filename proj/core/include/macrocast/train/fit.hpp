#pragma once

#include <vector>

#include "macrocast/dataset/supervised.hpp"
#include "macrocast/errors.hpp"
#include "macrocast/nn/model.hpp"

namespace macrocast::train {

struct TrainConfig {
  int batch_size = 32;
  double learning_rate = 0.001;
  double dropout = 0.0;
  double recurrent_dropout = 0.0;
  double weight_decay = 0.0;  // lambda on sum of squared weights
  int patience = 5;
  int max_epochs = 200;
  double clip_norm = 5.0;
  double min_delta = 1e-6;
};

struct EpochStats {
  int epoch = 0;          // 1-based
  double train_loss = 0;  // epoch mean of the optimized objective (incl. L2)
  double val_loss = 0;    // plain BCE, no penalty
};

struct FitResult {
  std::vector<EpochStats> history;
  int best_epoch = 0;
  double best_val_loss = 0;
};

// NumericError carrying the history up to the diverging epoch.
class FitDivergedError : public NumericError {
public:
  FitDivergedError(const std::string& msg, std::vector<EpochStats> hist)
      : NumericError(msg), history(std::move(hist)) {}
  std::vector<EpochStats> history;
};

// Minibatch Adam with shuffled epochs, gradient clipping by global norm,
// early stopping on validation BCE, best-epoch snapshot restore. The model's
// parameters end at the best epoch, and the returned history covers every
// epoch actually run.
FitResult fit(nn::Model& model, const dataset::Supervised& train,
              const dataset::Supervised& val, const TrainConfig& cfg, Rng& rng);

// Validation-style scoring: inference forward in chunks, mean BCE.
double evaluate_loss(const nn::Model& model, const dataset::Supervised& data);

// Predictions in natural order (inference mode).
Eigen::VectorXd predict(const nn::Model& model, const dataset::Supervised& data);

void write_history_csv(const std::vector<EpochStats>& history, const std::string& path);

}  // namespace macrocast::train
