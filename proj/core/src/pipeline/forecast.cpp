#include "macrocast/pipeline/forecast.hpp"

#include <sstream>

#include "macrocast/errors.hpp"

namespace macrocast::pipeline {

std::vector<data::YearMonth> reestimation_schedule(const data::YearMonth& oos_start,
                                                   const data::YearMonth& oos_end) {
  if (oos_end < oos_start) {
    throw ConfigError("out-of-sample end " + data::format_month(oos_end) +
                      " precedes start " + data::format_month(oos_start));
  }
  std::vector<data::YearMonth> schedule;
  for (data::YearMonth g = oos_start; g <= oos_end; g = data::add_months(g, 12)) {
    schedule.push_back(g);
  }
  return schedule;
}

PanelCache::PanelCache(const data::VintageStore& store, data::Catalog catalog, int k_neighbors)
    : store_(store), catalog_(std::move(catalog)), k_neighbors_(k_neighbors) {}

const data::Panel& PanelCache::get(const data::YearMonth& vintage) {
  std::lock_guard<std::mutex> lock(mutex_);
  const int key = data::month_index(vintage);
  auto it = panels_.find(key);
  if (it == panels_.end()) {
    data::VintageFrame frame = store_.load(vintage);
    it = panels_.emplace(key, data::build_panel(frame, catalog_, k_neighbors_)).first;
  }
  return it->second;
}

Eigen::VectorXd flat_window(const Eigen::MatrixXd& std_values,
                            const std::vector<data::YearMonth>& months,
                            const data::YearMonth& end_month, const data::YearMonth& vintage) {
  const long features = std_values.cols();
  if (months.empty()) throw DataError("empty panel at vintage " + data::format_month(vintage));
  const int end_idx = data::months_between(end_month, months.front());
  if (end_idx < dataset::kSequenceLength - 1 ||
      end_idx >= static_cast<int>(months.size())) {
    throw DataError("vintage " + data::format_month(vintage) + " panel (" +
                    data::format_month(months.front()) + ".." +
                    data::format_month(months.back()) +
                    ") does not cover the 12 months ending " + data::format_month(end_month));
  }
  Eigen::VectorXd flat(features * dataset::kSequenceLength);
  for (long f = 0; f < features; ++f) {
    for (int t = 0; t < dataset::kSequenceLength; ++t) {
      flat(f * dataset::kSequenceLength + t) =
          std_values(end_idx - (dataset::kSequenceLength - 1) + t, f);
    }
  }
  return flat;
}

namespace {

std::string job_context(ModelKind kind, Horizon horizon, int generation) {
  return "[model=" + to_string(kind) + " horizon=" + to_string(horizon) +
         " generation=" + std::to_string(generation) + "] ";
}

}  // namespace

JobResult recursive_forecast(ModelKind kind, Horizon horizon,
                             const std::vector<data::Announcement>& announcements,
                             const ForecastSettings& settings, std::uint64_t job_seed,
                             PanelCache& cache, std::ostream* log) {
  const int steps = horizon_steps(horizon);
  const int ahead = horizon_months_ahead(horizon);
  const auto schedule = reestimation_schedule(settings.oos_start, settings.oos_end);

  JobResult out;
  for (std::size_t g = 0; g < schedule.size(); ++g) {
    const data::YearMonth gen_month = schedule[g];
    const std::uint64_t gen_seed = derive_seed(job_seed, g);
    try {
      const data::Panel& train_panel = cache.get(gen_month);
      const std::vector<int> labels =
          data::panel_labels(train_panel, announcements, gen_month);
      const data::StandardizeStats stats =
          data::fit_standardizer(train_panel.values, 0, train_panel.features);
      const Eigen::MatrixXd std_values = data::apply_standardizer(stats, train_panel.values);
      const dataset::Supervised train =
          dataset::align_supervised(std_values, train_panel.months, labels, steps);

      GenerationInfo info;
      info.generation = static_cast<int>(g);
      info.reestimation_month = gen_month;
      info.seed = gen_seed;
      info.search_seed = derive_seed(gen_seed, 1);
      info.final_seed = derive_seed(gen_seed, 2);
      info.train_instances = static_cast<int>(train.y.size());

      SearchResult search;
      double ridge_lambda = 0;
      if (is_neural(kind)) {
        search = random_search(kind, train, settings.n_trials, info.search_seed,
                               settings.space, settings.budget, settings.val_block,
                               settings.workers);
        info.config = search.trials[static_cast<std::size_t>(search.best_index)].config;
        if (log) {
          *log << job_context(kind, horizon, info.generation) << "search done, best mean val loss "
               << search.trials[static_cast<std::size_t>(search.best_index)].mean_val_loss
               << " (trial " << search.best_index << ")\n";
        }
      } else if (kind == ModelKind::Ridge) {
        ridge_lambda = ridge_search(train, settings.ridge_lambdas, settings.val_block).best_lambda;
        info.ridge_lambda = ridge_lambda;
      }

      FinalFit fitted = final_fit(kind, info.config, ridge_lambda, train, info.final_seed,
                                  settings.budget, settings.val_block);

      // forecast the 12 target months this generation owns
      std::vector<Eigen::VectorXd> oos_windows;
      std::vector<data::YearMonth> oos_months;
      for (int m = 0; m < 12; ++m) {
        const data::YearMonth target = data::add_months(gen_month, m);
        if (settings.oos_end < target) break;
        const data::YearMonth pred_month = data::add_months(target, -ahead);
        const data::Panel& pred_panel = cache.get(pred_month);
        const Eigen::MatrixXd pred_std = data::apply_standardizer(stats, pred_panel.values);
        const Eigen::VectorXd flat = flat_window(pred_std, pred_panel.months,
                                                 data::add_months(target, -steps), pred_month);
        double prob = 0;
        if (is_neural(kind)) {
          prob = nn::predict_flat(*fitted.model, flat)(0);
        } else {
          prob = linear::predict_logistic(fitted.linear, flat.transpose())(0);
        }
        ForecastRecord rec;
        rec.target_month = target;
        rec.horizon = horizon;
        rec.model = kind;
        rec.probability = prob;
        rec.call = prob >= settings.threshold ? 1 : 0;
        rec.vintage = pred_month;
        rec.generation = static_cast<int>(g);
        rec.seed = gen_seed;
        out.forecasts.push_back(rec);
        oos_windows.push_back(flat);
        oos_months.push_back(target);
      }
      out.generations.push_back(info);
      if (log) {
        *log << job_context(kind, horizon, info.generation) << "fit on "
             << info.train_instances << " instances, " << oos_months.size() << " forecasts\n";
      }

      if (g + 1 == schedule.size()) {
        out.final_model = std::move(fitted.model);
        out.final_linear = fitted.linear;
        out.final_stats = stats;
        out.final_trials = std::move(search);
        out.final_history = std::move(fitted.history);
        out.final_train_flat = dataset::flatten(train.x).transpose();
        out.final_oos_flat.resize(static_cast<long>(oos_windows.size()),
                                  train.x.features() * dataset::kSequenceLength);
        for (std::size_t i = 0; i < oos_windows.size(); ++i) {
          out.final_oos_flat.row(static_cast<long>(i)) = oos_windows[i].transpose();
        }
        out.final_oos_months = std::move(oos_months);
      }
    } catch (const ConfigError& e) {
      throw ConfigError(job_context(kind, horizon, static_cast<int>(g)) + e.what());
    } catch (const DataError& e) {
      throw DataError(job_context(kind, horizon, static_cast<int>(g)) + e.what());
    } catch (const StructuralError& e) {
      throw StructuralError(job_context(kind, horizon, static_cast<int>(g)) + e.what());
    } catch (const NumericError& e) {
      throw NumericError(job_context(kind, horizon, static_cast<int>(g)) + e.what());
    }
  }
  return out;
}

}  // namespace macrocast::pipeline
