#include "macrocast/io/tables.hpp"

#include "macrocast/errors.hpp"
#include "macrocast/io/csv.hpp"

namespace macrocast::io {

void write_forecast_csv(const std::vector<pipeline::ForecastRecord>& records,
                        const std::string& path) {
  std::string text = "target_month,horizon,model,probability,call,vintage,generation,seed\n";
  for (const auto& r : records) {
    text += data::format_month(r.target_month);
    text += ',';
    text += pipeline::to_string(r.horizon);
    text += ',';
    text += pipeline::to_string(r.model);
    text += ',';
    text += format_double(r.probability);
    text += ',';
    text += std::to_string(r.call);
    text += ',';
    text += data::format_month(r.vintage);
    text += ',';
    text += std::to_string(r.generation);
    text += ',';
    text += std::to_string(r.seed);
    text += '\n';
  }
  write_text_file(path, text);
}

std::vector<pipeline::ForecastRecord> read_forecast_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  const std::vector<std::string> expected{"target_month", "horizon", "model",  "probability",
                                          "call",         "vintage", "generation", "seed"};
  if (table.header != expected) throw DataError("unexpected forecast CSV header in " + path);
  std::vector<pipeline::ForecastRecord> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    pipeline::ForecastRecord r;
    r.target_month = data::parse_month(row[0]);
    r.horizon = pipeline::horizon_from_string(row[1]);
    r.model = pipeline::model_kind_from_string(row[2]);
    r.probability = parse_double(row[3]);
    r.call = static_cast<int>(parse_long(row[4]));
    r.vintage = data::parse_month(row[5]);
    r.generation = static_cast<int>(parse_long(row[6]));
    r.seed = static_cast<std::uint64_t>(std::stoull(row[7]));
    out.push_back(r);
  }
  return out;
}

void write_metrics_csv(const std::vector<MetricsRow>& rows, const std::string& path) {
  std::string text =
      "model,horizon,n,base_rate,tp,fp,fn,tn,sensitivity,specificity,precision,"
      "balanced_accuracy,mcc,f1,degenerate,auroc,auprc\n";
  for (const auto& r : rows) {
    text += pipeline::to_string(r.model);
    text += ',';
    text += pipeline::to_string(r.horizon);
    text += ',';
    text += std::to_string(r.n);
    text += ',';
    text += format_double(r.base_rate);
    text += ',';
    text += std::to_string(r.counts.tp);
    text += ',';
    text += std::to_string(r.counts.fp);
    text += ',';
    text += std::to_string(r.counts.fn);
    text += ',';
    text += std::to_string(r.counts.tn);
    text += ',';
    text += format_double(r.metrics.sensitivity);
    text += ',';
    text += format_double(r.metrics.specificity);
    text += ',';
    text += format_double(r.metrics.precision);
    text += ',';
    text += format_double(r.metrics.balanced_accuracy);
    text += ',';
    text += format_double(r.metrics.mcc);
    text += ',';
    text += format_double(r.metrics.f1);
    text += ',';
    text += r.metrics.degenerate ? '1' : '0';
    text += ',';
    text += format_double(r.auroc);
    text += ',';
    text += format_double(r.auprc);
    text += '\n';
  }
  write_text_file(path, text);
}

}  // namespace macrocast::io
