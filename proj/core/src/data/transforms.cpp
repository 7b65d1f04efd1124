#include "macrocast/data/transforms.hpp"

#include <cmath>

#include "macrocast/errors.hpp"

namespace macrocast::data {

double transform_step(double prev, double cur, Transform kind, const std::string& context) {
  if (std::isnan(prev) || std::isnan(cur)) return std::nan("");
  switch (kind) {
    case Transform::FirstDifference:
      return cur - prev;
    case Transform::PercentChange:
      if (prev <= 0.0 || cur <= 0.0)
        throw DataError("non-positive level under percent-change transform" +
                        (context.empty() ? "" : " (" + context + ")"));
      return (cur - prev) / prev;
    case Transform::LogGrowth:
      if (prev <= 0.0 || cur <= 0.0)
        throw DataError("non-positive level under log transform" +
                        (context.empty() ? "" : " (" + context + ")"));
      return std::log(cur) - std::log(prev);
  }
  throw StructuralError("bad Transform");
}

std::vector<double> transform_series(const std::vector<double>& values, Transform kind,
                                     const std::string& series_name) {
  if (values.size() < 2)
    throw DataError("transform needs at least 2 observations" +
                    (series_name.empty() ? "" : " (series " + series_name + ")"));
  std::vector<double> out(values.size() - 1);
  for (std::size_t i = 1; i < values.size(); ++i) {
    std::string ctx = series_name.empty()
                          ? "index " + std::to_string(i)
                          : "series " + series_name + ", index " + std::to_string(i);
    out[i - 1] = transform_step(values[i - 1], values[i], kind, ctx);
  }
  return out;
}

MonthlyAggregate aggregate_daily_to_monthly(const std::vector<int>& obs_month_indices,
                                            const std::vector<double>& values) {
  if (obs_month_indices.size() != values.size())
    throw StructuralError("aggregate: month/value length mismatch");
  MonthlyAggregate out;
  std::size_t i = 0;
  while (i < obs_month_indices.size()) {
    int m = obs_month_indices[i];
    if (!out.month_indices.empty() && m < out.month_indices.back())
      throw DataError("daily observations out of order at month index " + std::to_string(m));
    double sum = 0.0;
    std::size_t count = 0;
    while (i < obs_month_indices.size() && obs_month_indices[i] == m) {
      sum += values[i];
      ++count;
      ++i;
    }
    out.month_indices.push_back(m);
    out.values.push_back(sum / static_cast<double>(count));
  }
  return out;
}

}  // namespace macrocast::data
