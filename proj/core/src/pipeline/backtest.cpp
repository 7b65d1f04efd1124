#include "macrocast/pipeline/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <json.hpp>
#include <numeric>

#include "macrocast/errors.hpp"
#include "macrocast/eval/curves.hpp"
#include "macrocast/explain/importance.hpp"
#include "macrocast/explain/kernel_shap.hpp"
#include "macrocast/explain/lime.hpp"
#include "macrocast/io/csv.hpp"
#include "macrocast/io/svg.hpp"
#include "macrocast/linear/serialize.hpp"
#include "macrocast/nn/serialize.hpp"
#include "macrocast/version.hpp"

namespace macrocast::pipeline {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Position in the full 5x5 grid, independent of which subset a run requests,
// so job seeds never depend on the config's model/horizon lists.
int grid_index(ModelKind kind, Horizon horizon) {
  int mi = 0, hi = 0;
  for (int i = 0; i < 5; ++i) {
    if (kAllModelKinds[i] == kind) mi = i;
    if (kAllHorizons[i] == horizon) hi = i;
  }
  return mi * 5 + hi;
}

std::string job_tag(ModelKind m, Horizon h) { return to_string(m) + "_" + to_string(h); }

}  // namespace

std::uint64_t job_seed_for(std::uint64_t master_seed, ModelKind kind, Horizon horizon) {
  return derive_seed(master_seed, static_cast<std::uint64_t>(grid_index(kind, horizon)));
}

namespace {

explain::PredictFn make_predictor(ModelKind kind, const JobResult& res) {
  if (is_neural(kind)) {
    const nn::Model* model = res.final_model.get();
    return [model](const Eigen::MatrixXd& x) { return nn::predict_flat(*model, x.transpose()); };
  }
  const linear::LogisticParams params = res.final_linear;
  return [params](const Eigen::MatrixXd& x) { return linear::predict_logistic(params, x); };
}

Eigen::MatrixXd sample_background(const Eigen::MatrixXd& train_flat, int count, Rng& rng) {
  const long n = train_flat.rows();
  if (n <= count) return train_flat;
  std::vector<long> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0L);
  for (int i = 0; i < count; ++i) {
    const long j = i + static_cast<long>(rng.uniform_u64(static_cast<std::uint64_t>(n - i)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  Eigen::MatrixXd out(count, train_flat.cols());
  for (int i = 0; i < count; ++i) out.row(i) = train_flat.row(idx[static_cast<std::size_t>(i)]);
  return out;
}

void append_attribution_rows(std::string& text, const Eigen::MatrixXd& values,
                             const std::vector<data::YearMonth>& months,
                             const std::vector<std::string>& features, const char* method) {
  for (long i = 0; i < values.rows(); ++i) {
    const std::string month = data::format_month(months[static_cast<std::size_t>(i)]);
    for (std::size_t f = 0; f < features.size(); ++f) {
      for (int t = 0; t < dataset::kSequenceLength; ++t) {
        text += month;
        text += ',';
        text += features[f];
        text += ',';
        text += std::to_string(t);
        text += ',';
        text += io::format_double(values(i, static_cast<long>(f) * dataset::kSequenceLength + t));
        text += ',';
        text += method;
        text += '\n';
      }
    }
  }
}

}  // namespace

std::vector<std::string> write_job_explanation(const RunConfig& cfg, ModelKind kind,
                                               Horizon horizon, const JobResult& res,
                                               const std::vector<std::string>& features,
                                               const std::string& output_dir,
                                               std::ostream* log) {
  std::vector<std::string> outputs;
  const fs::path dir(output_dir);
  const std::uint64_t explain_seed = derive_seed(res.generations.back().seed, 3);
  const explain::PredictFn predict = make_predictor(kind, res);
  const long width = res.final_oos_flat.cols();
  const long n_inst = res.final_oos_flat.rows();
  const std::string tag = job_tag(kind, horizon);

  Rng bg_rng(derive_seed(explain_seed, 0));
  const Eigen::MatrixXd background =
      sample_background(res.final_train_flat, cfg.shap_background, bg_rng);

  Eigen::MatrixXd shap(n_inst, width);
  for (long i = 0; i < n_inst; ++i) {
    Rng rng(derive_seed(explain_seed, 100 + static_cast<std::uint64_t>(i)));
    shap.row(i) = explain::kernel_shap(predict, res.final_oos_flat.row(i).transpose(), background,
                                       cfg.shap_coalitions, rng)
                      .phi.transpose();
  }
  if (log) *log << "[" << tag << "] shap attribution over " << n_inst << " instances\n";

  Eigen::MatrixXd lime;
  if (kind == ModelKind::Lstm || kind == ModelKind::Gru) {
    const Eigen::VectorXd mean = res.final_train_flat.colwise().mean().transpose();
    const Eigen::MatrixXd centered = res.final_train_flat.rowwise() - mean.transpose();
    const Eigen::VectorXd sd =
        centered.array().square().colwise().mean().sqrt().matrix().transpose();
    const int kept = static_cast<int>(std::min<long>(cfg.lime_kept, width));
    lime.resize(n_inst, width);
    for (long i = 0; i < n_inst; ++i) {
      Rng rng(derive_seed(explain_seed, 200 + static_cast<std::uint64_t>(i)));
      lime.row(i) = explain::lime_explain(predict, res.final_oos_flat.row(i).transpose(), mean,
                                          sd, cfg.lime_samples, cfg.lime_width, kept, rng)
                        .coefficients.transpose();
    }
    if (log) *log << "[" << tag << "] lime attribution over " << n_inst << " instances\n";
  }

  std::string text = "instance_month,feature,timestep,value,method\n";
  append_attribution_rows(text, shap, res.final_oos_months, features, "shap");
  if (lime.rows() > 0)
    append_attribution_rows(text, lime, res.final_oos_months, features, "lime");
  const std::string attr_name = "attribution_" + tag + ".csv";
  io::write_text_file((dir / attr_name).string(), text);
  outputs.push_back(attr_name);

  const std::string imp_name = "importance_" + tag + ".csv";
  explain::write_importance_csv(explain::aggregate_importance(shap, features),
                                (dir / imp_name).string());
  outputs.push_back(imp_name);
  if (lime.rows() > 0) {
    const std::string lime_name = "importance_lime_" + tag + ".csv";
    explain::write_importance_csv(explain::aggregate_importance(lime, features),
                                  (dir / lime_name).string());
    outputs.push_back(lime_name);
  }
  if (kind == ModelKind::Ridge) {
    const Eigen::VectorXd effects =
        linear::marginal_effects(res.final_linear, res.final_oos_flat);
    const std::string me_name = "marginal_effects_" + to_string(horizon) + ".csv";
    explain::write_importance_csv(
        explain::aggregate_importance(effects.transpose(), features), (dir / me_name).string());
    outputs.push_back(me_name);
  }
  return outputs;
}

namespace {

json generation_json(const GenerationInfo& info, ModelKind kind) {
  json g;
  g["generation"] = info.generation;
  g["month"] = data::format_month(info.reestimation_month);
  g["seed"] = info.seed;
  g["search_seed"] = info.search_seed;
  g["final_seed"] = info.final_seed;
  g["train_instances"] = info.train_instances;
  if (is_neural(kind)) {
    json c;
    c["hidden_layers"] = info.config.hidden_layers;
    c["units"] = info.config.units;
    c["batch_size"] = info.config.batch_size;
    c["dropout"] = info.config.dropout;
    c["recurrent_dropout"] = info.config.recurrent_dropout;
    c["weight_decay"] = info.config.weight_decay;
    c["learning_rate"] = info.config.learning_rate;
    g["config"] = std::move(c);
  } else if (kind == ModelKind::Ridge) {
    g["ridge_lambda"] = info.ridge_lambda;
  }
  return g;
}

}  // namespace

BacktestResult run_backtest(const RunConfig& cfg, const data::VintageStore& store,
                            std::ostream* log) {
  validate_run_config(cfg);
  const data::Catalog catalog =
      cfg.catalog_csv.empty() ? data::builtin_catalog() : data::load_catalog_csv(cfg.catalog_csv);
  data::validate_catalog(catalog);
  const std::vector<data::Announcement> announcements =
      data::load_announcements_csv(cfg.announcements_csv);

  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);

  PanelCache cache(store, catalog, cfg.k_neighbors);
  std::vector<std::string> features;
  for (const auto& spec : catalog) features.push_back(spec.abbrev);

  ForecastSettings settings;
  settings.oos_start = cfg.oos_start;
  settings.oos_end = cfg.oos_end;
  settings.n_trials = cfg.n_trials;
  settings.threshold = cfg.threshold;
  settings.val_block = cfg.val_block;
  settings.workers = cfg.workers;
  settings.budget.patience_cv = cfg.patience_cv;
  settings.budget.patience_final = cfg.patience_final;
  settings.budget.max_epochs_cv = cfg.max_epochs_cv;
  settings.budget.max_epochs_final = cfg.max_epochs_final;
  settings.budget.clip_norm = cfg.clip_norm;

  // labels as finally revised: every announcement counts
  const data::YearMonth revised_vintage{9999, 12};

  BacktestResult result;
  std::vector<io::MetricsRow> metric_rows;
  json manifest_jobs = json::array();

  for (ModelKind kind : cfg.models) {
    for (Horizon horizon : cfg.horizons) {
      const std::string tag = job_tag(kind, horizon);
      const std::uint64_t job_seed = job_seed_for(cfg.master_seed, kind, horizon);
      if (log) *log << "[" << tag << "] job seed " << job_seed << "\n";

      JobResult res =
          recursive_forecast(kind, horizon, announcements, settings, job_seed, cache, log);

      JobSummary summary;
      summary.model = kind;
      summary.horizon = horizon;
      summary.seed = job_seed;
      summary.forecasts = res.forecasts;
      summary.generations = res.generations;

      const std::string forecasts_name = "forecasts_" + tag + ".csv";
      io::write_forecast_csv(res.forecasts, (dir / forecasts_name).string());
      summary.outputs.push_back(forecasts_name);

      const std::string model_name = "model_" + tag + ".json";
      if (is_neural(kind)) {
        nn::save_model(*res.final_model, (dir / model_name).string());
        const std::string history_name = "history_" + tag + ".csv";
        train::write_history_csv(res.final_history.history, (dir / history_name).string());
        const std::string trials_name = "trials_" + tag + ".csv";
        write_trials_csv(res.final_trials, (dir / trials_name).string());
        summary.outputs.push_back(model_name);
        summary.outputs.push_back(history_name);
        summary.outputs.push_back(trials_name);
      } else {
        linear::save_linear(res.final_linear, kind == ModelKind::Ridge,
                            (dir / model_name).string());
        summary.outputs.push_back(model_name);
      }

      // evaluation against the revised record
      std::vector<data::YearMonth> target_months;
      Eigen::VectorXd probs(static_cast<long>(res.forecasts.size()));
      for (std::size_t i = 0; i < res.forecasts.size(); ++i) {
        target_months.push_back(res.forecasts[i].target_month);
        probs(static_cast<long>(i)) = res.forecasts[i].probability;
      }
      const std::vector<int> labels =
          data::build_realtime_labels(announcements, target_months, revised_vintage);
      Eigen::VectorXd y(probs.size());
      for (long i = 0; i < y.size(); ++i) y(i) = labels[static_cast<std::size_t>(i)];

      io::MetricsRow row;
      row.model = kind;
      row.horizon = horizon;
      row.n = probs.size();
      row.base_rate = probs.size() > 0 ? y.mean() : 0.0;
      row.counts = eval::confusion_at(probs, y, cfg.threshold);
      row.metrics = eval::point_metrics(row.counts);
      try {
        const eval::Curve roc = eval::roc_curve(probs, y);
        const eval::Curve pr = eval::pr_curve(probs, y);
        row.auroc = roc.area;
        row.auprc = pr.area;
        const std::string roc_name = "roc_" + tag + ".csv";
        const std::string pr_name = "pr_" + tag + ".csv";
        eval::write_curve_csv(roc, (dir / roc_name).string());
        eval::write_curve_csv(pr, (dir / pr_name).string());
        summary.outputs.push_back(roc_name);
        summary.outputs.push_back(pr_name);
        if (cfg.svg) {
          const std::string roc_svg = "roc_" + tag + ".svg";
          const std::string pr_svg = "pr_" + tag + ".svg";
          io::write_curve_svg(roc, "ROC " + tag, "false positive rate", "true positive rate",
                              (dir / roc_svg).string());
          io::write_curve_svg(pr, "PR " + tag, "recall", "precision", (dir / pr_svg).string());
          summary.outputs.push_back(roc_svg);
          summary.outputs.push_back(pr_svg);
        }
      } catch (const NumericError&) {
        // one-class out-of-sample window: point metrics stand, curves are undefined
        if (log) *log << "[" << tag << "] single-class evaluation window, no curves\n";
      }
      metric_rows.push_back(row);
      summary.metrics = row;

      if (cfg.explain) {
        try {
          const auto explain_outputs =
              write_job_explanation(cfg, kind, horizon, res, features, cfg.output_dir, log);
          summary.outputs.insert(summary.outputs.end(), explain_outputs.begin(),
                                 explain_outputs.end());
        } catch (const ConfigError& e) {
          throw ConfigError("[" + tag + " explain] " + e.what());
        } catch (const DataError& e) {
          throw DataError("[" + tag + " explain] " + e.what());
        } catch (const NumericError& e) {
          throw NumericError("[" + tag + " explain] " + e.what());
        }
      }

      json mj;
      mj["model"] = to_string(kind);
      mj["horizon"] = to_string(horizon);
      mj["seed"] = job_seed;
      mj["forecasts"] = res.forecasts.size();
      json gens = json::array();
      for (const auto& info : res.generations) gens.push_back(generation_json(info, kind));
      mj["generations"] = std::move(gens);
      mj["outputs"] = summary.outputs;
      manifest_jobs.push_back(std::move(mj));

      result.jobs.push_back(std::move(summary));
      if (log) {
        *log << "[" << tag << "] done: " << result.jobs.back().forecasts.size()
             << " forecasts, auroc " << result.jobs.back().metrics.auroc << "\n";
      }
    }
  }

  io::write_metrics_csv(metric_rows, (dir / "metrics.csv").string());

  json manifest;
  manifest["version"] = kVersion;
  manifest["config"] = json::parse(run_config_to_json_text(cfg));
  manifest["config_hash"] = run_config_hash(cfg);
  manifest["jobs"] = std::move(manifest_jobs);
  manifest["metrics_csv"] = "metrics.csv";
  result.manifest_path = (dir / "manifest.json").string();
  io::write_text_file(result.manifest_path, manifest.dump(2) + "\n");
  return result;
}

}  // namespace macrocast::pipeline
