#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <json.hpp>

#include "macrocast/data/panel.hpp"
#include "macrocast/errors.hpp"
#include "macrocast/eval/curves.hpp"
#include "macrocast/io/csv.hpp"
#include "macrocast/io/svg.hpp"
#include "macrocast/io/tables.hpp"
#include "macrocast/linear/serialize.hpp"
#include "macrocast/nn/serialize.hpp"
#include "macrocast/pipeline/backtest.hpp"
#include "macrocast/version.hpp"

namespace fs = std::filesystem;
using namespace macrocast;

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

// Normalized monthly panel per vintage plus a validation report of what the
// preprocessing did (imputed cells, spline-filled months, label inputs).
int cmd_ingest(const pipeline::RunConfig& cfg) {
  require(!cfg.vintage_dir.empty(), "ingest needs --vintages");
  require(!cfg.announcements_csv.empty(), "ingest needs --announcements");
  const data::Catalog catalog =
      cfg.catalog_csv.empty() ? data::builtin_catalog() : data::load_catalog_csv(cfg.catalog_csv);
  data::validate_catalog(catalog);
  const auto announcements = data::load_announcements_csv(cfg.announcements_csv);

  data::DirectoryVintageStore store(cfg.vintage_dir);
  const auto vintages = store.available();
  require(!vintages.empty(), "no vintage files (YYYY-MM.csv) in " + cfg.vintage_dir);

  const fs::path out(cfg.output_dir);
  fs::create_directories(out / "panels");

  std::string report = "vintage,months,features,imputed_cells,interpolated_months,"
                       "announcements_known,recession_months\n";
  for (const auto& v : vintages) {
    data::PanelBuildStats stats;
    const data::Panel panel = data::build_panel(store.load(v), catalog, cfg.k_neighbors, &stats);
    const std::vector<int> labels = data::panel_labels(panel, announcements, v);
    long known = 0;
    for (const auto& a : announcements)
      if (!(v < a.announced)) ++known;
    long positives = 0;
    for (int l : labels) positives += l;
    const std::string name = data::format_month(v);
    data::write_panel_csv(panel, labels, (out / "panels" / (name + ".csv")).string());
    report += name + ',' + std::to_string(panel.months.size()) + ',' +
              std::to_string(panel.features.size()) + ',' + std::to_string(stats.imputed_cells) +
              ',' + std::to_string(stats.interpolated_months) + ',' + std::to_string(known) +
              ',' + std::to_string(positives) + '\n';
    std::cerr << "ingested " << name << ": " << panel.months.size() << " months, "
              << stats.imputed_cells << " imputed cells\n";
  }
  io::write_text_file((out / "ingest_report.csv").string(), report);
  std::cout << "wrote " << vintages.size() << " panels and ingest_report.csv to "
            << cfg.output_dir << "\n";
  return 0;
}

// Search on a single vintage. When the vintage is one of the run's
// reestimation months, the seed matches what the full run would use there.
int cmd_tune(const pipeline::RunConfig& cfg, const std::string& model_name,
             const std::string& horizon_name, const std::string& vintage_text) {
  require(!cfg.vintage_dir.empty(), "tune needs --vintages");
  require(!cfg.announcements_csv.empty(), "tune needs --announcements");
  const pipeline::ModelKind kind = pipeline::model_kind_from_string(model_name);
  const pipeline::Horizon horizon = pipeline::horizon_from_string(horizon_name);
  require(kind != pipeline::ModelKind::Logit,
          "the plain logistic baseline has no hyperparameters to tune");

  const data::Catalog catalog =
      cfg.catalog_csv.empty() ? data::builtin_catalog() : data::load_catalog_csv(cfg.catalog_csv);
  data::validate_catalog(catalog);
  const auto announcements = data::load_announcements_csv(cfg.announcements_csv);
  data::DirectoryVintageStore store(cfg.vintage_dir);
  require(!store.available().empty(), "no vintage files (YYYY-MM.csv) in " + cfg.vintage_dir);
  const data::YearMonth vintage =
      vintage_text.empty() ? store.available().back() : data::parse_month(vintage_text);

  pipeline::PanelCache cache(store, catalog, cfg.k_neighbors);
  const data::Panel& panel = cache.get(vintage);
  const std::vector<int> labels = data::panel_labels(panel, announcements, vintage);
  const data::StandardizeStats stats = data::fit_standardizer(panel.values, 0, panel.features);
  const dataset::Supervised train =
      dataset::align_supervised(data::apply_standardizer(stats, panel.values), panel.months,
                                labels, pipeline::horizon_steps(horizon));

  const std::uint64_t job_seed = pipeline::job_seed_for(cfg.master_seed, kind, horizon);
  std::uint64_t generation = 0;
  if (cfg.oos_start.year > 0 && !(vintage < cfg.oos_start)) {
    const int gap = data::months_between(vintage, cfg.oos_start);
    if (gap % 12 == 0) generation = static_cast<std::uint64_t>(gap / 12);
  }
  const std::uint64_t search_seed = derive_seed(derive_seed(job_seed, generation), 1);

  fs::create_directories(cfg.output_dir);
  const std::string tag =
      pipeline::to_string(kind) + "_" + pipeline::to_string(horizon) + "_" +
      data::format_month(vintage);

  if (pipeline::is_neural(kind)) {
    pipeline::FitBudget budget;
    budget.patience_cv = cfg.patience_cv;
    budget.max_epochs_cv = cfg.max_epochs_cv;
    budget.patience_final = cfg.patience_final;
    budget.max_epochs_final = cfg.max_epochs_final;
    budget.clip_norm = cfg.clip_norm;
    const pipeline::SearchResult search =
        pipeline::random_search(kind, train, cfg.n_trials, search_seed, pipeline::SearchSpace{},
                                budget, cfg.val_block, cfg.workers);
    const std::string path = (fs::path(cfg.output_dir) / ("trials_" + tag + ".csv")).string();
    pipeline::write_trials_csv(search, path);
    const auto& best = search.trials[static_cast<std::size_t>(search.best_index)];
    nlohmann::json j;
    j["trial"] = best.trial_index;
    j["mean_val_loss"] = best.mean_val_loss;
    j["hidden_layers"] = best.config.hidden_layers;
    j["units"] = best.config.units;
    j["batch_size"] = best.config.batch_size;
    j["dropout"] = best.config.dropout;
    j["recurrent_dropout"] = best.config.recurrent_dropout;
    j["weight_decay"] = best.config.weight_decay;
    j["learning_rate"] = best.config.learning_rate;
    std::cout << j.dump(2) << "\n";
    std::cerr << "wrote " << path << "\n";
  } else {
    const pipeline::RidgeSearchResult rs =
        pipeline::ridge_search(train, pipeline::default_ridge_lambdas(), cfg.val_block);
    std::string text = "lambda,mean_val_loss\n";
    for (std::size_t i = 0; i < rs.lambdas.size(); ++i)
      text += io::format_double(rs.lambdas[i]) + "," + io::format_double(rs.mean_val_losses[i]) +
              "\n";
    const std::string path =
        (fs::path(cfg.output_dir) / ("ridge_grid_" + tag + ".csv")).string();
    io::write_text_file(path, text);
    nlohmann::json j;
    j["best_lambda"] = rs.best_lambda;
    std::cout << j.dump(2) << "\n";
    std::cerr << "wrote " << path << "\n";
  }
  return 0;
}

int cmd_run(const pipeline::RunConfig& cfg) {
  data::DirectoryVintageStore store(cfg.vintage_dir);
  const pipeline::BacktestResult result = pipeline::run_backtest(cfg, store, &std::cerr);
  for (const auto& job : result.jobs) {
    std::cout << pipeline::to_string(job.model) << " " << pipeline::to_string(job.horizon)
              << ": " << job.forecasts.size() << " forecasts, auroc "
              << io::format_double(job.metrics.auroc) << ", auprc "
              << io::format_double(job.metrics.auprc) << "\n";
  }
  std::cout << "manifest: " << result.manifest_path << "\n";
  return 0;
}

// Metrics and curves for an existing forecast CSV against the fully revised
// labels in the announcements file.
int cmd_evaluate(const pipeline::RunConfig& cfg, const std::string& forecasts_path) {
  require(!forecasts_path.empty(), "evaluate needs --forecasts");
  require(!cfg.announcements_csv.empty(), "evaluate needs --announcements");
  const auto records = io::read_forecast_csv(forecasts_path);
  if (records.empty()) throw DataError("no forecast rows in " + forecasts_path);
  const auto announcements = data::load_announcements_csv(cfg.announcements_csv);

  std::vector<data::YearMonth> months;
  Eigen::VectorXd probs(static_cast<long>(records.size()));
  for (std::size_t i = 0; i < records.size(); ++i) {
    months.push_back(records[i].target_month);
    probs(static_cast<long>(i)) = records[i].probability;
  }
  const std::vector<int> labels =
      data::build_realtime_labels(announcements, months, data::YearMonth{9999, 12});
  Eigen::VectorXd y(probs.size());
  for (long i = 0; i < y.size(); ++i) y(i) = labels[static_cast<std::size_t>(i)];

  io::MetricsRow row;
  row.model = records.front().model;
  row.horizon = records.front().horizon;
  row.n = probs.size();
  row.base_rate = y.mean();
  row.counts = eval::confusion_at(probs, y, cfg.threshold);
  row.metrics = eval::point_metrics(row.counts);

  fs::create_directories(cfg.output_dir);
  const fs::path out(cfg.output_dir);
  try {
    const eval::Curve roc = eval::roc_curve(probs, y);
    const eval::Curve pr = eval::pr_curve(probs, y);
    row.auroc = roc.area;
    row.auprc = pr.area;
    eval::write_curve_csv(roc, (out / "evaluate_roc.csv").string());
    eval::write_curve_csv(pr, (out / "evaluate_pr.csv").string());
    if (cfg.svg) {
      io::write_curve_svg(roc, "ROC", "false positive rate", "true positive rate",
                          (out / "evaluate_roc.svg").string());
      io::write_curve_svg(pr, "PR", "recall", "precision", (out / "evaluate_pr.svg").string());
    }
  } catch (const NumericError&) {
    std::cerr << "single-class labels, curves undefined\n";
  }
  io::write_metrics_csv({row}, (out / "evaluate_metrics.csv").string());
  std::cout << "n=" << row.n << " tp=" << row.counts.tp << " fp=" << row.counts.fp
            << " fn=" << row.counts.fn << " tn=" << row.counts.tn << " sens="
            << io::format_double(row.metrics.sensitivity) << " spec="
            << io::format_double(row.metrics.specificity) << " auroc="
            << io::format_double(row.auroc) << " auprc=" << io::format_double(row.auprc) << "\n";
  return 0;
}

// Re-runs the final-generation attribution for one job from its saved model,
// without retraining. Useful for changing the explanation budget.
int cmd_explain(const pipeline::RunConfig& cfg, const std::string& model_name,
                const std::string& horizon_name) {
  pipeline::validate_run_config(cfg);
  const pipeline::ModelKind kind = pipeline::model_kind_from_string(model_name);
  const pipeline::Horizon horizon = pipeline::horizon_from_string(horizon_name);

  const data::Catalog catalog =
      cfg.catalog_csv.empty() ? data::builtin_catalog() : data::load_catalog_csv(cfg.catalog_csv);
  data::validate_catalog(catalog);
  const auto announcements = data::load_announcements_csv(cfg.announcements_csv);
  data::DirectoryVintageStore store(cfg.vintage_dir);
  pipeline::PanelCache cache(store, catalog, cfg.k_neighbors);

  const auto schedule = pipeline::reestimation_schedule(cfg.oos_start, cfg.oos_end);
  const std::size_t g = schedule.size() - 1;
  const data::YearMonth gen_month = schedule[g];
  const std::uint64_t job_seed = pipeline::job_seed_for(cfg.master_seed, kind, horizon);

  pipeline::JobResult res;
  pipeline::GenerationInfo info;
  info.generation = static_cast<int>(g);
  info.reestimation_month = gen_month;
  info.seed = derive_seed(job_seed, g);
  res.generations.push_back(info);

  const data::Panel& panel = cache.get(gen_month);
  const std::vector<int> labels = data::panel_labels(panel, announcements, gen_month);
  res.final_stats = data::fit_standardizer(panel.values, 0, panel.features);
  const Eigen::MatrixXd std_values = data::apply_standardizer(res.final_stats, panel.values);
  const int steps = pipeline::horizon_steps(horizon);
  const dataset::Supervised train =
      dataset::align_supervised(std_values, panel.months, labels, steps);
  res.final_train_flat = dataset::flatten(train.x).transpose();

  const int ahead = pipeline::horizon_months_ahead(horizon);
  std::vector<Eigen::VectorXd> windows;
  for (int m = 0; m < 12; ++m) {
    const data::YearMonth target = data::add_months(gen_month, m);
    if (cfg.oos_end < target) break;
    const data::YearMonth pred_month = data::add_months(target, -ahead);
    const data::Panel& pred_panel = cache.get(pred_month);
    const Eigen::MatrixXd pred_std = data::apply_standardizer(res.final_stats, pred_panel.values);
    windows.push_back(pipeline::flat_window(pred_std, pred_panel.months,
                                            data::add_months(target, -steps), pred_month));
    res.final_oos_months.push_back(target);
  }
  res.final_oos_flat.resize(static_cast<long>(windows.size()), res.final_train_flat.cols());
  for (std::size_t i = 0; i < windows.size(); ++i)
    res.final_oos_flat.row(static_cast<long>(i)) = windows[i].transpose();

  const std::string model_path =
      (fs::path(cfg.output_dir) /
       ("model_" + pipeline::to_string(kind) + "_" + pipeline::to_string(horizon) + ".json"))
          .string();
  if (pipeline::is_neural(kind)) {
    res.final_model = nn::load_model(model_path);
  } else {
    res.final_linear = linear::load_linear(model_path);
  }

  std::vector<std::string> features;
  for (const auto& spec : catalog) features.push_back(spec.abbrev);
  const auto outputs = pipeline::write_job_explanation(cfg, kind, horizon, res, features,
                                                       cfg.output_dir, &std::cerr);
  for (const auto& name : outputs) std::cout << name << "\n";
  return 0;
}

int cmd_report(const pipeline::RunConfig& cfg) {
  const fs::path out(cfg.output_dir);
  const std::string manifest_text = io::read_text_file((out / "manifest.json").string());
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(manifest_text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("manifest.json parse error: ") + e.what());
  }
  std::cout << "version: " << manifest.value("version", std::string("?")) << "\n";
  std::cout << "config_hash: " << manifest.value("config_hash", std::string("?")) << "\n";
  if (manifest.contains("jobs")) {
    for (const auto& job : manifest.at("jobs")) {
      std::cout << job.value("model", std::string("?")) << " "
                << job.value("horizon", std::string("?")) << ": seed "
                << job.value("seed", std::uint64_t{0}) << ", "
                << job.value("forecasts", std::size_t{0}) << " forecasts, "
                << (job.contains("generations") ? job.at("generations").size() : 0)
                << " generations\n";
    }
  }
  const fs::path metrics = out / "metrics.csv";
  if (fs::exists(metrics)) {
    std::cout << "\n" << io::read_text_file(metrics.string());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"macrocast: vintage-aware US recession probability forecasting"};
  app.require_subcommand(1);

  pipeline::RunConfig cfg;
  std::string config_path;
  std::string model_name, horizon_name, vintage_text, forecasts_path;
  std::vector<std::string> model_names, horizon_names;
  std::string oos_start_text, oos_end_text;
  bool no_explain = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--vintages", cfg.vintage_dir, "directory of YYYY-MM.csv vintage files");
    sub->add_option("--announcements", cfg.announcements_csv,
                    "turning-point announcements CSV");
    sub->add_option("--catalog", cfg.catalog_csv, "series catalog CSV (default: built-in)");
    sub->add_option("--out", cfg.output_dir, "output directory");
    sub->add_option("--seed", cfg.master_seed, "master seed");
    sub->add_option("--trials", cfg.n_trials, "random-search trials per reestimation");
    sub->add_option("--threshold", cfg.threshold, "recession call threshold");
    sub->add_option("--k-neighbors", cfg.k_neighbors, "kNN imputation neighbors");
    sub->add_option("--val-block", cfg.val_block, "validation block length");
    sub->add_option("--patience-cv", cfg.patience_cv, "early-stop patience in CV fits");
    sub->add_option("--patience-final", cfg.patience_final, "early-stop patience in final fits");
    sub->add_option("--max-epochs-cv", cfg.max_epochs_cv, "epoch cap in CV fits");
    sub->add_option("--max-epochs-final", cfg.max_epochs_final, "epoch cap in final fits");
    sub->add_option("--clip-norm", cfg.clip_norm, "global gradient-norm clip");
    sub->add_option("--shap-coalitions", cfg.shap_coalitions, "sampled SHAP coalitions");
    sub->add_option("--shap-background", cfg.shap_background, "SHAP background rows");
    sub->add_option("--lime-samples", cfg.lime_samples, "LIME perturbation samples");
    sub->add_option("--lime-kept", cfg.lime_kept, "LIME coefficients kept");
    sub->add_option("--lime-width", cfg.lime_width, "LIME kernel width (0 = auto)");
    sub->add_flag("--svg", cfg.svg, "also write SVG charts");
    sub->add_flag("--no-explain", no_explain, "skip final-generation attribution");
    sub->add_option("--workers", cfg.workers, "trial worker threads (0 = hardware)");
    sub->add_option("--oos-start", oos_start_text, "first out-of-sample target month YYYY-MM");
    sub->add_option("--oos-end", oos_end_text, "last out-of-sample target month YYYY-MM");
    sub->add_option("--models", model_names, "model kinds (logit,ridge,ffn,lstm,gru)")
        ->delimiter(',');
    sub->add_option("--horizons", horizon_names,
                    "horizons (nowcast,immediate,short,medium,long)")
        ->delimiter(',');
    sub->add_option("--config", config_path,
                    "JSON config file; its values OVERRIDE command-line flags");
  };

  CLI::App* ingest = app.add_subcommand("ingest", "build normalized panels per vintage");
  add_common(ingest);
  CLI::App* tune = app.add_subcommand("tune", "hyperparameter search on one vintage");
  add_common(tune);
  tune->add_option("--model", model_name, "model kind")->required();
  tune->add_option("--horizon", horizon_name, "horizon")->required();
  tune->add_option("--vintage", vintage_text, "vintage month YYYY-MM (default: latest)");
  CLI::App* run = app.add_subcommand("run", "full walk-forward backtest");
  add_common(run);
  CLI::App* evaluate = app.add_subcommand("evaluate", "score an existing forecast CSV");
  add_common(evaluate);
  evaluate->add_option("--forecasts", forecasts_path, "forecast CSV to score");
  CLI::App* explain = app.add_subcommand("explain", "re-run attribution from a saved model");
  add_common(explain);
  explain->add_option("--model", model_name, "model kind")->required();
  explain->add_option("--horizon", horizon_name, "horizon")->required();
  CLI::App* report = app.add_subcommand("report", "summarize a run's output directory");
  add_common(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!oos_start_text.empty()) cfg.oos_start = data::parse_month(oos_start_text);
    if (!oos_end_text.empty()) cfg.oos_end = data::parse_month(oos_end_text);
    if (!model_names.empty()) {
      cfg.models.clear();
      for (const auto& name : model_names)
        cfg.models.push_back(pipeline::model_kind_from_string(name));
    }
    if (!horizon_names.empty()) {
      cfg.horizons.clear();
      for (const auto& name : horizon_names)
        cfg.horizons.push_back(pipeline::horizon_from_string(name));
    }
    if (no_explain) cfg.explain = false;
    if (!config_path.empty()) pipeline::apply_run_config_file(cfg, config_path);

    if (app.got_subcommand(ingest)) return cmd_ingest(cfg);
    if (app.got_subcommand(tune)) return cmd_tune(cfg, model_name, horizon_name, vintage_text);
    if (app.got_subcommand(run)) {
      pipeline::validate_run_config(cfg);
      return cmd_run(cfg);
    }
    if (app.got_subcommand(evaluate)) return cmd_evaluate(cfg, forecasts_path);
    if (app.got_subcommand(explain)) return cmd_explain(cfg, model_name, horizon_name);
    if (app.got_subcommand(report)) return cmd_report(cfg);
    throw ConfigError("no subcommand");
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const StructuralError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  } catch (const NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
