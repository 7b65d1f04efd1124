#pragma once

#include <string>
#include <vector>

#include "macrocast/data/catalog.hpp"

namespace macrocast::data {

// One growth-rate step between consecutive months. NaN inputs propagate so
// ragged monthly grids can be transformed in place; finite inputs are
// validated (log/percent changes need strictly positive levels).
double transform_step(double prev, double cur, Transform kind, const std::string& context);

// Dense series (no gaps): returns n-1 transformed values.
// Errors: fewer than 2 observations; non-positive level under log/percent.
std::vector<double> transform_series(const std::vector<double>& values, Transform kind,
                                     const std::string& series_name = "");

// Daily observations arrive as repeated month stamps; collapse them to the
// within-month mean. Input must be grouped by month in ascending order.
// Empty input -> empty output.
struct MonthlyAggregate {
  std::vector<int> month_indices;  // flat month index, ascending
  std::vector<double> values;
};
MonthlyAggregate aggregate_daily_to_monthly(const std::vector<int>& obs_month_indices,
                                            const std::vector<double>& values);

}  // namespace macrocast::data
