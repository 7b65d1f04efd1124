#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <ostream>

#include "macrocast/data/labels.hpp"
#include "macrocast/data/panel.hpp"
#include "macrocast/data/standardize.hpp"
#include "macrocast/data/vintage.hpp"
#include "macrocast/pipeline/search.hpp"

namespace macrocast::pipeline {

// Model refit months: every 12 months from the start of the out-of-sample
// period through its end.
std::vector<data::YearMonth> reestimation_schedule(const data::YearMonth& oos_start,
                                                   const data::YearMonth& oos_end);

struct ForecastRecord {
  data::YearMonth target_month;
  Horizon horizon = Horizon::Nowcast;
  ModelKind model = ModelKind::Logit;
  double probability = 0;
  int call = 0;
  data::YearMonth vintage;  // prediction-time vintage the input window came from
  int generation = 0;
  std::uint64_t seed = 0;  // generation seed
};

struct GenerationInfo {
  int generation = 0;
  data::YearMonth reestimation_month;
  std::uint64_t seed = 0;         // fans out to the per-phase seeds below
  std::uint64_t search_seed = 0;
  std::uint64_t final_seed = 0;
  int train_instances = 0;
  HyperparameterConfig config;  // neural kinds
  double ridge_lambda = 0;      // ridge only
};

// Raw transformed panels keyed by vintage month. Panels carry no
// standardization, so every (model, horizon) job can share one cache.
class PanelCache {
public:
  PanelCache(const data::VintageStore& store, data::Catalog catalog, int k_neighbors);
  const data::Panel& get(const data::YearMonth& vintage);
  const data::Catalog& catalog() const { return catalog_; }

private:
  const data::VintageStore& store_;
  data::Catalog catalog_;
  int k_neighbors_;
  std::map<int, data::Panel> panels_;
  std::mutex mutex_;
};

struct ForecastSettings {
  data::YearMonth oos_start;
  data::YearMonth oos_end;
  int n_trials = 60;
  double threshold = 0.5;
  int val_block = 128;
  int workers = 0;  // 0 = hardware concurrency
  SearchSpace space;
  FitBudget budget;
  std::vector<double> ridge_lambdas = default_ridge_lambdas();
};

// Output of one (model, horizon) job. The last generation's artifacts are
// kept for persistence and explanation; flat matrices are row-per-instance
// in the feature*12 layout the explainers consume.
struct JobResult {
  std::vector<ForecastRecord> forecasts;
  std::vector<GenerationInfo> generations;

  std::unique_ptr<nn::Model> final_model;  // neural kinds
  linear::LogisticParams final_linear;     // linear kinds
  data::StandardizeStats final_stats;
  SearchResult final_trials;        // neural kinds
  train::FitResult final_history;   // neural kinds
  Eigen::MatrixXd final_train_flat; // standardized training instances of the last generation
  Eigen::MatrixXd final_oos_flat;   // input windows behind the last generation's forecasts
  std::vector<data::YearMonth> final_oos_months;
};

// Flattened 12-month input window (feature-major, row f*12 + t) ending at
// end_month, read from a standardized panel. DataError names the vintage when
// the panel does not cover the window.
Eigen::VectorXd flat_window(const Eigen::MatrixXd& std_values,
                            const std::vector<data::YearMonth>& months,
                            const data::YearMonth& end_month, const data::YearMonth& vintage);

// Walk-forward protocol: at each reestimation month, fit on everything in
// that month's vintage (hyperparameter search included), then forecast the
// next 12 target months with parameters frozen, reading each target's input
// window from the vintage of its prediction month (target minus the horizon's
// months-ahead). Standardization stats are fit on the generation's training
// panel and frozen for its whole window.
JobResult recursive_forecast(ModelKind kind, Horizon horizon,
                             const std::vector<data::Announcement>& announcements,
                             const ForecastSettings& settings, std::uint64_t job_seed,
                             PanelCache& cache, std::ostream* log = nullptr);

}  // namespace macrocast::pipeline
