#include "macrocast/pipeline/run_config.hpp"

#include <json.hpp>
#include <set>

#include "macrocast/errors.hpp"
#include "macrocast/io/csv.hpp"

namespace macrocast::pipeline {

using nlohmann::json;

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "vintage_dir",    "announcements_csv", "catalog_csv",      "output_dir",
      "models",         "horizons",          "oos_start",        "oos_end",
      "master_seed",    "n_trials",          "threshold",        "k_neighbors",
      "val_block",      "patience_cv",       "patience_final",   "max_epochs_cv",
      "max_epochs_final", "clip_norm",       "explain",          "shap_coalitions",
      "shap_background", "lime_samples",     "lime_kept",        "lime_width",
      "svg",            "workers"};
  return keys;
}

void apply_json(RunConfig& cfg, const json& j) {
  if (!j.is_object()) throw ConfigError("run config JSON root must be an object");
  for (const auto& [key, value] : j.items()) {
    if (known_keys().count(key) == 0) throw ConfigError("unknown run config key: " + key);
    (void)value;
  }
  try {
    if (j.contains("vintage_dir")) cfg.vintage_dir = j.at("vintage_dir").get<std::string>();
    if (j.contains("announcements_csv"))
      cfg.announcements_csv = j.at("announcements_csv").get<std::string>();
    if (j.contains("catalog_csv")) cfg.catalog_csv = j.at("catalog_csv").get<std::string>();
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("models")) {
      cfg.models.clear();
      for (const auto& name : j.at("models"))
        cfg.models.push_back(model_kind_from_string(name.get<std::string>()));
    }
    if (j.contains("horizons")) {
      cfg.horizons.clear();
      for (const auto& name : j.at("horizons"))
        cfg.horizons.push_back(horizon_from_string(name.get<std::string>()));
    }
    if (j.contains("oos_start"))
      cfg.oos_start = data::parse_month(j.at("oos_start").get<std::string>());
    if (j.contains("oos_end")) cfg.oos_end = data::parse_month(j.at("oos_end").get<std::string>());
    if (j.contains("master_seed")) cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("n_trials")) cfg.n_trials = j.at("n_trials").get<int>();
    if (j.contains("threshold")) cfg.threshold = j.at("threshold").get<double>();
    if (j.contains("k_neighbors")) cfg.k_neighbors = j.at("k_neighbors").get<int>();
    if (j.contains("val_block")) cfg.val_block = j.at("val_block").get<int>();
    if (j.contains("patience_cv")) cfg.patience_cv = j.at("patience_cv").get<int>();
    if (j.contains("patience_final")) cfg.patience_final = j.at("patience_final").get<int>();
    if (j.contains("max_epochs_cv")) cfg.max_epochs_cv = j.at("max_epochs_cv").get<int>();
    if (j.contains("max_epochs_final"))
      cfg.max_epochs_final = j.at("max_epochs_final").get<int>();
    if (j.contains("clip_norm")) cfg.clip_norm = j.at("clip_norm").get<double>();
    if (j.contains("explain")) cfg.explain = j.at("explain").get<bool>();
    if (j.contains("shap_coalitions"))
      cfg.shap_coalitions = j.at("shap_coalitions").get<int>();
    if (j.contains("shap_background"))
      cfg.shap_background = j.at("shap_background").get<int>();
    if (j.contains("lime_samples")) cfg.lime_samples = j.at("lime_samples").get<int>();
    if (j.contains("lime_kept")) cfg.lime_kept = j.at("lime_kept").get<int>();
    if (j.contains("lime_width")) cfg.lime_width = j.at("lime_width").get<double>();
    if (j.contains("svg")) cfg.svg = j.at("svg").get<bool>();
    if (j.contains("workers")) cfg.workers = j.at("workers").get<int>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("run config JSON type error: ") + e.what());
  }
}

json to_json(const RunConfig& cfg) {
  json j;
  j["vintage_dir"] = cfg.vintage_dir;
  j["announcements_csv"] = cfg.announcements_csv;
  j["catalog_csv"] = cfg.catalog_csv;
  j["output_dir"] = cfg.output_dir;
  std::vector<std::string> models;
  for (ModelKind k : cfg.models) models.push_back(to_string(k));
  j["models"] = models;
  std::vector<std::string> horizons;
  for (Horizon h : cfg.horizons) horizons.push_back(to_string(h));
  j["horizons"] = horizons;
  j["oos_start"] = data::format_month(cfg.oos_start);
  j["oos_end"] = data::format_month(cfg.oos_end);
  j["master_seed"] = cfg.master_seed;
  j["n_trials"] = cfg.n_trials;
  j["threshold"] = cfg.threshold;
  j["k_neighbors"] = cfg.k_neighbors;
  j["val_block"] = cfg.val_block;
  j["patience_cv"] = cfg.patience_cv;
  j["patience_final"] = cfg.patience_final;
  j["max_epochs_cv"] = cfg.max_epochs_cv;
  j["max_epochs_final"] = cfg.max_epochs_final;
  j["clip_norm"] = cfg.clip_norm;
  j["explain"] = cfg.explain;
  j["shap_coalitions"] = cfg.shap_coalitions;
  j["shap_background"] = cfg.shap_background;
  j["lime_samples"] = cfg.lime_samples;
  j["lime_kept"] = cfg.lime_kept;
  j["lime_width"] = cfg.lime_width;
  j["svg"] = cfg.svg;
  j["workers"] = cfg.workers;
  return j;
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
  RunConfig cfg;
  apply_run_config_file(cfg, path);
  return cfg;
}

void apply_run_config_file(RunConfig& cfg, const std::string& path) {
  json j;
  try {
    j = json::parse(io::read_text_file(path));
  } catch (const json::exception& e) {
    throw ConfigError("run config " + path + ": " + e.what());
  }
  apply_json(cfg, j);
}

std::string run_config_to_json_text(const RunConfig& cfg) {
  return to_json(cfg).dump(2) + "\n";
}

void save_run_config(const RunConfig& cfg, const std::string& path) {
  io::write_text_file(path, run_config_to_json_text(cfg));
}

void validate_run_config(const RunConfig& cfg) {
  if (cfg.vintage_dir.empty()) throw ConfigError("vintage_dir is required");
  if (cfg.announcements_csv.empty()) throw ConfigError("announcements_csv is required");
  if (cfg.output_dir.empty()) throw ConfigError("output_dir is required");
  if (cfg.models.empty()) throw ConfigError("at least one model kind is required");
  if (cfg.horizons.empty()) throw ConfigError("at least one horizon is required");
  for (std::size_t i = 0; i < cfg.models.size(); ++i)
    for (std::size_t k = i + 1; k < cfg.models.size(); ++k)
      if (cfg.models[i] == cfg.models[k])
        throw ConfigError("duplicate model kind: " + to_string(cfg.models[i]));
  for (std::size_t i = 0; i < cfg.horizons.size(); ++i)
    for (std::size_t k = i + 1; k < cfg.horizons.size(); ++k)
      if (cfg.horizons[i] == cfg.horizons[k])
        throw ConfigError("duplicate horizon: " + to_string(cfg.horizons[i]));
  if (cfg.oos_start.year <= 0 || cfg.oos_end.year <= 0)
    throw ConfigError("oos_start and oos_end are required (YYYY-MM)");
  if (cfg.oos_end < cfg.oos_start)
    throw ConfigError("oos_end precedes oos_start");
  if (cfg.n_trials < 1) throw ConfigError("n_trials must be >= 1");
  if (!(cfg.threshold > 0 && cfg.threshold < 1))
    throw ConfigError("threshold must lie in (0, 1)");
  if (cfg.k_neighbors < 1) throw ConfigError("k_neighbors must be >= 1");
  if (cfg.val_block < 2) throw ConfigError("val_block must be >= 2");
  if (cfg.patience_cv < 0 || cfg.patience_final < 0) throw ConfigError("patience must be >= 0");
  if (cfg.max_epochs_cv < 1 || cfg.max_epochs_final < 1)
    throw ConfigError("max_epochs must be >= 1");
  if (cfg.clip_norm <= 0) throw ConfigError("clip_norm must be positive");
  if (cfg.shap_coalitions < 1) throw ConfigError("shap_coalitions must be >= 1");
  if (cfg.shap_background < 1) throw ConfigError("shap_background must be >= 1");
  if (cfg.lime_kept < 1) throw ConfigError("lime_kept must be >= 1");
  if (cfg.lime_samples < 10 * cfg.lime_kept)
    throw ConfigError("lime_samples must be >= 10 * lime_kept");
  if (cfg.workers < 0) throw ConfigError("workers must be >= 0");
}

std::string run_config_hash(const RunConfig& cfg) {
  const std::string text = run_config_to_json_text(cfg);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 0; i < 16; ++i) buf[15 - i] = hex[(h >> (4 * i)) & 0xF];
  buf[16] = '\0';
  return std::string(buf);
}

}  // namespace macrocast::pipeline
