#pragma once

#include <string>
#include <vector>

#include "macrocast/data/calendar.hpp"
#include "macrocast/pipeline/types.hpp"

namespace macrocast::pipeline {

// Everything a full run needs. Flags fill this in first; a config file, when
// given, overrides whichever keys it contains.
struct RunConfig {
  std::string vintage_dir;
  std::string announcements_csv;
  std::string catalog_csv;  // empty = built-in 25-series catalog
  std::string output_dir = "out";

  std::vector<ModelKind> models{ModelKind::Logit, ModelKind::Ridge, ModelKind::Ffn,
                                ModelKind::Lstm, ModelKind::Gru};
  std::vector<Horizon> horizons{Horizon::Nowcast, Horizon::Immediate, Horizon::Short,
                                Horizon::Medium, Horizon::Long};
  data::YearMonth oos_start;
  data::YearMonth oos_end;

  std::uint64_t master_seed = 42;
  int n_trials = 60;
  double threshold = 0.5;
  int k_neighbors = 5;
  int val_block = 128;
  int patience_cv = 5;
  int patience_final = 10;
  int max_epochs_cv = 200;
  int max_epochs_final = 500;
  double clip_norm = 5.0;

  bool explain = true;
  int shap_coalitions = 2048;
  int shap_background = 100;
  int lime_samples = 3000;
  int lime_kept = 300;
  double lime_width = 0;  // <= 0: 0.75 * sqrt(input width)

  bool svg = false;
  int workers = 0;  // trial-level parallelism; 0 = hardware concurrency
};

RunConfig load_run_config(const std::string& path);  // defaults + file
void apply_run_config_file(RunConfig& cfg, const std::string& path);  // file keys override
std::string run_config_to_json_text(const RunConfig& cfg);
void save_run_config(const RunConfig& cfg, const std::string& path);

// ConfigError on out-of-range or inconsistent fields.
void validate_run_config(const RunConfig& cfg);

// FNV-1a over the canonical JSON rendering; stable across runs.
std::string run_config_hash(const RunConfig& cfg);

}  // namespace macrocast::pipeline
