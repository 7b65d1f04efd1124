#pragma once

#include <functional>
#include <memory>

#include "macrocast/dataset/supervised.hpp"
#include "macrocast/errors.hpp"
#include "macrocast/linear/logistic.hpp"
#include "macrocast/nn/model.hpp"
#include "macrocast/pipeline/types.hpp"
#include "macrocast/train/fit.hpp"

namespace macrocast::pipeline {

struct HyperparameterConfig {
  int hidden_layers = 1;
  int units = 32;  // recurrent units / ffn hidden width
  int batch_size = 32;
  double dropout = 0.0;
  double recurrent_dropout = 0.0;
  double weight_decay = 0.0;
  double learning_rate = 0.001;
};

// Candidate grids sampled uniformly and independently per field.
struct SearchSpace {
  std::vector<int> hidden_layers{1, 2};
  std::vector<int> units{16, 32, 64};
  std::vector<int> batch_size{16, 32, 64};
  std::vector<double> dropout{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  std::vector<double> recurrent_dropout{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  std::vector<double> weight_decay{0.0, 0.1, 0.2};
  std::vector<double> learning_rate{0.01, 0.001};

  HyperparameterConfig sample(Rng& rng) const;
  void validate(const HyperparameterConfig& cfg) const;  // ConfigError if not a member
};

// epoch caps and patience for the two fit phases
struct FitBudget {
  int patience_cv = 5;
  int max_epochs_cv = 200;
  int patience_final = 10;
  int max_epochs_final = 500;
  double clip_norm = 5.0;
  double min_delta = 1e-6;
};

std::unique_ptr<nn::Model> make_model(ModelKind kind, const HyperparameterConfig& cfg,
                                      int input_features, std::uint64_t seed);
long param_count(ModelKind kind, const HyperparameterConfig& cfg, int input_features);

struct TrialResult {
  int trial_index = 0;
  std::uint64_t seed = 0;
  HyperparameterConfig config;
  std::vector<double> split_losses;  // best val BCE per CV split
  double mean_val_loss = 0;
};

struct SearchResult {
  std::vector<TrialResult> trials;  // in draw order
  int best_index = -1;
};

// Raised when no trial produced a finite validation loss; carries everything
// that was tried.
class SearchFailedError : public NumericError {
public:
  SearchFailedError(const std::string& msg, SearchResult log)
      : NumericError(msg), trials(std::move(log)) {}
  SearchResult trials;
};

// test hook: replaces the blocked-CV training of one trial
using TrialEvaluator =
    std::function<std::vector<double>(const HyperparameterConfig&, std::uint64_t trial_seed)>;

// Uniform random search: n_trials configs drawn up front from `seed`, each
// scored by expanding-window blocked CV (patience_cv). Winner has the lowest
// mean validation loss; exact ties go to fewer parameters, then draw order.
// Configs and per-trial seeds are independent of evaluation order, so results
// are identical at any worker count.
SearchResult random_search(ModelKind kind, const dataset::Supervised& data, int n_trials,
                           std::uint64_t seed, const SearchSpace& space, const FitBudget& budget,
                           int val_block, int workers,
                           const TrialEvaluator* evaluator = nullptr);

// Ridge lambda grid searched with the same blocked CV and selection rule.
struct RidgeSearchResult {
  std::vector<double> lambdas;
  std::vector<double> mean_val_losses;
  double best_lambda = 0;
};
RidgeSearchResult ridge_search(const dataset::Supervised& data, const std::vector<double>& lambdas,
                               int val_block);

inline const std::vector<double>& default_ridge_lambdas() {
  static const std::vector<double> v{0.001, 0.01, 0.1, 1.0, 10.0};
  return v;
}

// Final model for one generation. Neural kinds: train/validation split at
// n - val_block (the same proportion as the last CV split), patience_final,
// best-epoch restore. Linear kinds: full-sample convex fit.
struct FinalFit {
  std::unique_ptr<nn::Model> model;  // neural kinds only
  linear::LogisticParams linear;     // linear kinds only
  train::FitResult history;          // neural kinds only
};
FinalFit final_fit(ModelKind kind, const HyperparameterConfig& cfg, double ridge_lambda,
                   const dataset::Supervised& data, std::uint64_t seed, const FitBudget& budget,
                   int val_block);

void write_trials_csv(const SearchResult& search, const std::string& path);

}  // namespace macrocast::pipeline
