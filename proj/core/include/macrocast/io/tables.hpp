#pragma once

#include <limits>
#include <string>
#include <vector>

#include "macrocast/eval/confusion.hpp"
#include "macrocast/pipeline/forecast.hpp"

namespace macrocast::io {

// columns: target_month,horizon,model,probability,call,vintage,generation,seed
void write_forecast_csv(const std::vector<pipeline::ForecastRecord>& records,
                        const std::string& path);
std::vector<pipeline::ForecastRecord> read_forecast_csv(const std::string& path);

struct MetricsRow {
  pipeline::ModelKind model = pipeline::ModelKind::Logit;
  pipeline::Horizon horizon = pipeline::Horizon::Nowcast;
  long n = 0;
  double base_rate = 0;
  eval::Confusion counts;
  eval::PointMetrics metrics;
  double auroc = std::numeric_limits<double>::quiet_NaN();  // NaN when undefined
  double auprc = std::numeric_limits<double>::quiet_NaN();
};

void write_metrics_csv(const std::vector<MetricsRow>& rows, const std::string& path);

}  // namespace macrocast::io
