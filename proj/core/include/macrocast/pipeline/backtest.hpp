#pragma once

#include <ostream>

#include "macrocast/io/tables.hpp"
#include "macrocast/pipeline/run_config.hpp"

namespace macrocast::pipeline {

struct JobSummary {
  ModelKind model = ModelKind::Logit;
  Horizon horizon = Horizon::Nowcast;
  std::uint64_t seed = 0;
  io::MetricsRow metrics;
  std::vector<ForecastRecord> forecasts;
  std::vector<GenerationInfo> generations;
  std::vector<std::string> outputs;  // file names relative to output_dir
};

struct BacktestResult {
  std::vector<JobSummary> jobs;
  std::string manifest_path;
};

// Runs the complete protocol for every requested (model, horizon) pair:
// walk-forward forecasting, evaluation against fully revised labels,
// final-generation attribution, CSV/JSON persistence, and a timestamp-free
// manifest. Job seeds come from the master seed and the pair's position in
// the full model x horizon grid, so a subset run reproduces the same numbers
// as a full run.
BacktestResult run_backtest(const RunConfig& cfg, const data::VintageStore& store,
                            std::ostream* log = nullptr);

// Job seed for one (model, horizon) pair under a master seed; position in the
// full grid, independent of which subset a config requests.
std::uint64_t job_seed_for(std::uint64_t master_seed, ModelKind kind, Horizon horizon);

// Final-generation attribution for one job: SHAP for every kind, LIME for the
// recurrent kinds, average marginal effects for ridge. Needs the final model
// and explanation matrices filled in `res`. Returns the written file names
// (relative to output_dir).
std::vector<std::string> write_job_explanation(const RunConfig& cfg, ModelKind kind,
                                               Horizon horizon, const JobResult& res,
                                               const std::vector<std::string>& features,
                                               const std::string& output_dir,
                                               std::ostream* log = nullptr);

}  // namespace macrocast::pipeline
