#include "macrocast/train/fit.hpp"

#include <cmath>
#include <sstream>

#include "macrocast/dataset/batch.hpp"
#include "macrocast/errors.hpp"
#include "macrocast/io/csv.hpp"
#include "macrocast/train/adam.hpp"
#include "macrocast/train/early_stop.hpp"
#include "macrocast/train/loss.hpp"

namespace macrocast::train {

namespace {
constexpr Eigen::Index kScoreChunk = 256;
}

Eigen::VectorXd predict(const nn::Model& model, const dataset::Supervised& data) {
  const Eigen::Index n = data.x.instances();
  Eigen::VectorXd probs(n);
  for (Eigen::Index start = 0; start < n; start += kScoreChunk) {
    Eigen::Index len = std::min(kScoreChunk, n - start);
    auto chunk = dataset::take(data, start, start + len);
    probs.segment(start, len) = model.forward(chunk.x, nullptr, nullptr);
  }
  return probs;
}

double evaluate_loss(const nn::Model& model, const dataset::Supervised& data) {
  return bce_loss(predict(model, data), data.y);
}

FitResult fit(nn::Model& model, const dataset::Supervised& train,
              const dataset::Supervised& val, const TrainConfig& cfg, Rng& rng) {
  if (train.x.instances() < 1 || val.x.instances() < 1)
    throw StructuralError("fit: empty train or validation set");
  if (cfg.max_epochs < 1) throw ConfigError("fit: max_epochs must be >= 1");
  if (cfg.learning_rate <= 0.0) throw ConfigError("fit: learning_rate must be positive");

  const Eigen::VectorXd weight_mask = model.params().weight_mask();
  AdamState adam(model.params().size(), cfg.learning_rate);
  EarlyStopState stopper;
  stopper.patience = cfg.patience;
  stopper.min_delta = cfg.min_delta;

  FitResult result;
  Eigen::VectorXd best_params = model.params().flat();
  Eigen::VectorXd grad(model.params().size());
  const int n_train = static_cast<int>(train.x.instances());

  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    auto batches = dataset::batch_schedule(n_train, cfg.batch_size, true, rng);
    double loss_sum = 0.0;
    long seen = 0;
    for (const auto& idx : batches) {
      auto mb = dataset::gather(train, idx);
      auto plan = model.make_dropout_plan(mb.x.instances(), cfg.dropout,
                                          cfg.recurrent_dropout, rng);
      std::unique_ptr<nn::ForwardCache> cache;
      Eigen::VectorXd probs = model.forward(mb.x, plan.active ? &plan : nullptr, &cache);
      double objective = bce_loss(probs, mb.y) +
                         l2_penalty(model.params().flat(), weight_mask, cfg.weight_decay);
      if (!std::isfinite(objective))
        throw FitDivergedError("fit: non-finite training loss at epoch " +
                                   std::to_string(epoch),
                               result.history);
      grad.setZero();
      model.backward(*cache, bce_dlogit(probs, mb.y), grad);
      add_l2_gradient(model.params().flat(), weight_mask, cfg.weight_decay, grad);
      if (!grad.allFinite())
        throw FitDivergedError("fit: non-finite gradient at epoch " + std::to_string(epoch),
                               result.history);
      clip_global_norm(grad, cfg.clip_norm);
      adam.step(model.params().flat(), grad);
      loss_sum += objective * static_cast<double>(idx.size());
      seen += static_cast<long>(idx.size());
    }

    EpochStats stats;
    stats.epoch = epoch;
    stats.train_loss = loss_sum / static_cast<double>(seen);
    stats.val_loss = evaluate_loss(model, val);
    if (!std::isfinite(stats.val_loss))
      throw FitDivergedError("fit: non-finite validation loss at epoch " +
                                 std::to_string(epoch),
                             result.history);
    result.history.push_back(stats);

    const bool improved_to_here = stopper.best_epoch < 0 ||
                                  stopper.best_val - stats.val_loss > stopper.min_delta;
    if (improved_to_here) best_params = model.params().flat();
    if (stopper.observe(epoch, stats.val_loss)) break;
  }

  model.params().flat() = best_params;
  result.best_epoch = stopper.best_epoch;
  result.best_val_loss = stopper.best_val;
  return result;
}

void write_history_csv(const std::vector<EpochStats>& history, const std::string& path) {
  std::ostringstream out;
  out << "epoch,train_loss,val_loss\n";
  for (const auto& e : history)
    out << e.epoch << ',' << io::format_double(e.train_loss) << ','
        << io::format_double(e.val_loss) << '\n';
  io::write_text_file(path, out.str());
}

}  // namespace macrocast::train
