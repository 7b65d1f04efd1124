#include "macrocast/pipeline/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "macrocast/dataset/cv.hpp"
#include "macrocast/errors.hpp"
#include "macrocast/io/csv.hpp"
#include "macrocast/nn/ffn.hpp"
#include "macrocast/nn/recurrent.hpp"
#include "macrocast/train/loss.hpp"

namespace macrocast::pipeline {

namespace {

template <typename T>
T pick(const std::vector<T>& grid, Rng& rng, const char* field) {
  if (grid.empty()) throw ConfigError(std::string("search space grid is empty: ") + field);
  return grid[static_cast<std::size_t>(rng.uniform_u64(grid.size()))];
}

template <typename T>
void require_member(const std::vector<T>& grid, T value, const char* field) {
  if (std::find(grid.begin(), grid.end(), value) == grid.end()) {
    std::ostringstream os;
    os << "hyperparameter outside search space: " << field << " = " << value;
    throw ConfigError(os.str());
  }
}

}  // namespace

HyperparameterConfig SearchSpace::sample(Rng& rng) const {
  HyperparameterConfig cfg;
  cfg.hidden_layers = pick(hidden_layers, rng, "hidden_layers");
  cfg.units = pick(units, rng, "units");
  cfg.batch_size = pick(batch_size, rng, "batch_size");
  cfg.dropout = pick(dropout, rng, "dropout");
  cfg.recurrent_dropout = pick(recurrent_dropout, rng, "recurrent_dropout");
  cfg.weight_decay = pick(weight_decay, rng, "weight_decay");
  cfg.learning_rate = pick(learning_rate, rng, "learning_rate");
  return cfg;
}

void SearchSpace::validate(const HyperparameterConfig& cfg) const {
  require_member(hidden_layers, cfg.hidden_layers, "hidden_layers");
  require_member(units, cfg.units, "units");
  require_member(batch_size, cfg.batch_size, "batch_size");
  require_member(dropout, cfg.dropout, "dropout");
  require_member(recurrent_dropout, cfg.recurrent_dropout, "recurrent_dropout");
  require_member(weight_decay, cfg.weight_decay, "weight_decay");
  require_member(learning_rate, cfg.learning_rate, "learning_rate");
}

std::unique_ptr<nn::Model> make_model(ModelKind kind, const HyperparameterConfig& cfg,
                                      int input_features, std::uint64_t seed) {
  switch (kind) {
    case ModelKind::Ffn: {
      std::vector<int> hidden(static_cast<std::size_t>(cfg.hidden_layers), cfg.units);
      return std::make_unique<nn::FfnModel>(input_features, hidden, seed);
    }
    case ModelKind::Lstm:
      return std::make_unique<nn::RecurrentModel>(nn::CellKind::Lstm, input_features, cfg.units,
                                                  cfg.hidden_layers, seed);
    case ModelKind::Gru:
      return std::make_unique<nn::RecurrentModel>(nn::CellKind::Gru, input_features, cfg.units,
                                                  cfg.hidden_layers, seed);
    default:
      throw ConfigError("make_model: " + to_string(kind) + " is not a neural kind");
  }
}

long param_count(ModelKind kind, const HyperparameterConfig& cfg, int input_features) {
  return static_cast<long>(make_model(kind, cfg, input_features, 0)->params().size());
}

namespace {

train::TrainConfig cv_train_config(const HyperparameterConfig& cfg, const FitBudget& budget) {
  train::TrainConfig tc;
  tc.batch_size = cfg.batch_size;
  tc.learning_rate = cfg.learning_rate;
  tc.dropout = cfg.dropout;
  tc.recurrent_dropout = cfg.recurrent_dropout;
  tc.weight_decay = cfg.weight_decay;
  tc.patience = budget.patience_cv;
  tc.max_epochs = budget.max_epochs_cv;
  tc.clip_norm = budget.clip_norm;
  tc.min_delta = budget.min_delta;
  return tc;
}

// One trial across every CV split. A diverging fit marks the trial with an
// infinite loss instead of aborting the search.
std::vector<double> evaluate_trial(ModelKind kind, const HyperparameterConfig& cfg,
                                   std::uint64_t trial_seed,
                                   const std::vector<std::pair<dataset::Supervised,
                                                               dataset::Supervised>>& splits,
                                   const FitBudget& budget) {
  std::vector<double> losses;
  losses.reserve(splits.size());
  const train::TrainConfig tc = cv_train_config(cfg, budget);
  for (std::size_t s = 0; s < splits.size(); ++s) {
    const auto& [tr, va] = splits[s];
    auto model = make_model(kind, cfg, static_cast<int>(tr.x.features()),
                            derive_seed(trial_seed, 2 * s));
    Rng fit_rng(derive_seed(trial_seed, 2 * s + 1));
    try {
      losses.push_back(train::fit(*model, tr, va, tc, fit_rng).best_val_loss);
    } catch (const train::FitDivergedError&) {
      losses.assign(splits.size(), std::numeric_limits<double>::infinity());
      return losses;
    }
  }
  return losses;
}

double mean_of(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return v.empty() ? std::numeric_limits<double>::infinity()
                   : s / static_cast<double>(v.size());
}

}  // namespace

SearchResult random_search(ModelKind kind, const dataset::Supervised& data, int n_trials,
                           std::uint64_t seed, const SearchSpace& space, const FitBudget& budget,
                           int val_block, int workers, const TrialEvaluator* evaluator) {
  if (!is_neural(kind)) {
    throw ConfigError("random_search only applies to neural kinds, got " + to_string(kind));
  }
  if (n_trials < 1) throw ConfigError("random_search: n_trials must be >= 1");

  // All configs and seeds come from the search seed before any evaluation, so
  // neither worker count nor completion order can shift a trial's draw.
  SearchResult out;
  out.trials.resize(static_cast<std::size_t>(n_trials));
  {
    Rng rng(seed);
    for (int i = 0; i < n_trials; ++i) {
      TrialResult& t = out.trials[static_cast<std::size_t>(i)];
      t.trial_index = i;
      t.config = space.sample(rng);
      t.seed = derive_seed(seed, 100 + static_cast<std::uint64_t>(i));
    }
  }

  std::vector<std::pair<dataset::Supervised, dataset::Supervised>> splits;
  if (evaluator == nullptr) {
    const auto ranges = dataset::blocked_cv_splits(static_cast<int>(data.y.size()), val_block);
    splits.reserve(ranges.size());
    for (const auto& r : ranges) {
      splits.emplace_back(dataset::take(data, r.train_begin, r.train_end),
                          dataset::take(data, r.val_begin, r.val_end));
    }
  }

  auto run_trial = [&](std::size_t i) {
    TrialResult& t = out.trials[i];
    t.split_losses = evaluator ? (*evaluator)(t.config, t.seed)
                               : evaluate_trial(kind, t.config, t.seed, splits, budget);
    t.mean_val_loss = mean_of(t.split_losses);
  };

  int effective = workers >= 1 ? workers : static_cast<int>(std::thread::hardware_concurrency());
  if (effective < 1) effective = 1;
  effective = std::min(effective, n_trials);
  if (effective == 1) {
    for (std::size_t i = 0; i < out.trials.size(); ++i) run_trial(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= out.trials.size()) return;
        try {
          run_trial(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(effective));
    for (int w = 0; w < effective; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  // lowest mean; exact ties prefer the smaller model, then the earlier draw
  const int features = static_cast<int>(data.x.features());
  long best_params = std::numeric_limits<long>::max();
  for (std::size_t i = 0; i < out.trials.size(); ++i) {
    const TrialResult& t = out.trials[i];
    if (std::isnan(t.mean_val_loss)) continue;
    if (out.best_index >= 0) {
      const double best_mean = out.trials[static_cast<std::size_t>(out.best_index)].mean_val_loss;
      if (t.mean_val_loss > best_mean) continue;
      if (t.mean_val_loss == best_mean) {
        const long params = param_count(kind, t.config, features);
        if (params >= best_params) continue;
        out.best_index = static_cast<int>(i);
        best_params = params;
        continue;
      }
    }
    out.best_index = static_cast<int>(i);
    best_params = param_count(kind, t.config, features);
  }
  if (out.best_index < 0 ||
      !std::isfinite(out.trials[static_cast<std::size_t>(out.best_index)].mean_val_loss)) {
    throw SearchFailedError("random_search: every trial diverged", std::move(out));
  }
  return out;
}

RidgeSearchResult ridge_search(const dataset::Supervised& data, const std::vector<double>& lambdas,
                               int val_block) {
  if (lambdas.empty()) throw ConfigError("ridge_search: empty lambda grid");
  const auto ranges = dataset::blocked_cv_splits(static_cast<int>(data.y.size()), val_block);
  const Eigen::MatrixXd design = dataset::flatten(data.x).transpose();

  RidgeSearchResult out;
  out.lambdas = lambdas;
  out.mean_val_losses.assign(lambdas.size(), 0.0);
  for (std::size_t li = 0; li < lambdas.size(); ++li) {
    double total = 0;
    for (const auto& r : ranges) {
      const Eigen::MatrixXd xtr = design.middleRows(r.train_begin, r.train_end - r.train_begin);
      const Eigen::VectorXd ytr = data.y.segment(r.train_begin, r.train_end - r.train_begin);
      const Eigen::MatrixXd xva = design.middleRows(r.val_begin, r.val_end - r.val_begin);
      const Eigen::VectorXd yva = data.y.segment(r.val_begin, r.val_end - r.val_begin);
      const linear::LogisticParams params = linear::fit_logistic(xtr, ytr, lambdas[li]);
      total += train::bce_loss(linear::predict_logistic(params, xva), yva);
    }
    out.mean_val_losses[li] = total / static_cast<double>(ranges.size());
  }
  std::size_t best = 0;
  for (std::size_t li = 1; li < lambdas.size(); ++li) {
    if (out.mean_val_losses[li] < out.mean_val_losses[best]) best = li;
  }
  out.best_lambda = lambdas[best];
  return out;
}

FinalFit final_fit(ModelKind kind, const HyperparameterConfig& cfg, double ridge_lambda,
                   const dataset::Supervised& data, std::uint64_t seed, const FitBudget& budget,
                   int val_block) {
  FinalFit out;
  const auto n = static_cast<int>(data.y.size());
  if (is_neural(kind)) {
    if (n <= val_block) {
      throw DataError("final_fit: " + std::to_string(n) +
                      " instances cannot spare a validation block of " +
                      std::to_string(val_block));
    }
    const dataset::Supervised tr = dataset::take(data, 0, n - val_block);
    const dataset::Supervised va = dataset::take(data, n - val_block, n);
    out.model = make_model(kind, cfg, static_cast<int>(data.x.features()), derive_seed(seed, 0));
    train::TrainConfig tc = cv_train_config(cfg, budget);
    tc.patience = budget.patience_final;
    tc.max_epochs = budget.max_epochs_final;
    Rng fit_rng(derive_seed(seed, 1));
    out.history = train::fit(*out.model, tr, va, tc, fit_rng);
  } else {
    const Eigen::MatrixXd design = dataset::flatten(data.x).transpose();
    const double lambda = kind == ModelKind::Ridge ? ridge_lambda : 0.0;
    out.linear = linear::fit_logistic(design, data.y, lambda);
  }
  return out;
}

void write_trials_csv(const SearchResult& search, const std::string& path) {
  std::string text =
      "trial,seed,hidden_layers,units,batch_size,dropout,recurrent_dropout,"
      "weight_decay,learning_rate,mean_val_loss,split_losses,selected\n";
  for (const TrialResult& t : search.trials) {
    text += std::to_string(t.trial_index);
    text += ',';
    text += std::to_string(t.seed);
    text += ',';
    text += std::to_string(t.config.hidden_layers);
    text += ',';
    text += std::to_string(t.config.units);
    text += ',';
    text += std::to_string(t.config.batch_size);
    text += ',';
    text += io::format_double(t.config.dropout);
    text += ',';
    text += io::format_double(t.config.recurrent_dropout);
    text += ',';
    text += io::format_double(t.config.weight_decay);
    text += ',';
    text += io::format_double(t.config.learning_rate);
    text += ',';
    text += io::format_double(t.mean_val_loss);
    text += ',';
    for (std::size_t s = 0; s < t.split_losses.size(); ++s) {
      if (s) text += ';';
      text += io::format_double(t.split_losses[s]);
    }
    text += ',';
    text += (t.trial_index == search.best_index) ? '1' : '0';
    text += '\n';
  }
  io::write_text_file(path, text);
}

}  // namespace macrocast::pipeline
