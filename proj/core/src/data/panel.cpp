#include "macrocast/data/panel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "macrocast/data/impute.hpp"
#include "macrocast/data/spline.hpp"
#include "macrocast/data/transforms.hpp"
#include "macrocast/errors.hpp"
#include "macrocast/io/csv.hpp"

namespace macrocast::data {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct MonthlySeries {
  int first_month;  // flat index of first transformed value
  std::vector<double> values;  // transformed, may contain NaN holes
  long interpolated = 0;       // months the quarterly spline filled in
};

// One series: raw vintage observations -> transformed values on a monthly grid.
MonthlySeries prepare_series(const SeriesSpec& spec, const SeriesObservations& obs) {
  std::vector<int> months;
  months.reserve(obs.months.size());
  for (const auto& m : obs.months) months.push_back(month_index(m));

  std::vector<int> grid_months;
  std::vector<double> grid_values;

  if (spec.frequency == Frequency::Daily) {
    auto agg = aggregate_daily_to_monthly(months, obs.values);
    grid_months = std::move(agg.month_indices);
    grid_values = std::move(agg.values);
  } else {
    for (std::size_t i = 1; i < months.size(); ++i)
      if (months[i] == months[i - 1])
        throw DataError("duplicate observation month for series " + spec.abbrev + " at " +
                        format_month(obs.months[i]));
    grid_months = months;
    grid_values = obs.values;
  }
  if (grid_months.size() < 2)
    throw DataError("series " + spec.abbrev + " has fewer than 2 observations");

  int first = grid_months.front();
  int last = grid_months.back();

  // dense monthly levels with NaN holes
  std::vector<double> levels(static_cast<std::size_t>(last - first + 1), kNaN);
  long interpolated = 0;
  if (spec.frequency == Frequency::Quarterly) {
    // interpolate quarterly levels onto every month between the knots
    auto filled = spline_fill_months(grid_months, grid_values, first, last);
    levels = std::move(filled);
    interpolated = static_cast<long>(levels.size()) - static_cast<long>(grid_months.size());
  } else {
    for (std::size_t i = 0; i < grid_months.size(); ++i)
      levels[static_cast<std::size_t>(grid_months[i] - first)] = grid_values[i];
  }

  MonthlySeries out;
  out.first_month = first + 1;  // one growth observation per consecutive level pair
  out.interpolated = interpolated;
  out.values.resize(levels.size() - 1);
  for (std::size_t i = 1; i < levels.size(); ++i) {
    std::string ctx = "series " + spec.abbrev + ", month " +
                      format_month(month_from_index(first + static_cast<int>(i)));
    out.values[i - 1] = transform_step(levels[i - 1], levels[i], spec.transform, ctx);
  }
  return out;
}

}  // namespace

Panel build_panel(const VintageFrame& frame, const Catalog& catalog, int k_neighbors,
                  PanelBuildStats* stats) {
  validate_catalog(catalog);

  std::vector<MonthlySeries> prepared;
  prepared.reserve(catalog.size());
  for (const auto& spec : catalog) {
    auto it = frame.series.find(spec.abbrev);
    if (it == frame.series.end())
      throw DataError("vintage " + format_month(frame.vintage_date) +
                      " is missing catalog series " + spec.abbrev);
    prepared.push_back(prepare_series(spec, it->second));
  }

  int start = std::numeric_limits<int>::min();
  int end = std::numeric_limits<int>::min();
  for (const auto& s : prepared) {
    start = std::max(start, s.first_month);
    end = std::max(end, s.first_month + static_cast<int>(s.values.size()) - 1);
  }
  if (end < start) throw DataError("panel grid is empty");

  const Eigen::Index n = end - start + 1;
  Eigen::MatrixXd values(n, static_cast<Eigen::Index>(catalog.size()));
  values.setConstant(kNaN);
  for (std::size_t c = 0; c < prepared.size(); ++c) {
    const auto& s = prepared[c];
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      int m = s.first_month + static_cast<int>(i);
      if (m < start || m > end) continue;
      values(m - start, static_cast<Eigen::Index>(c)) = s.values[i];
    }
  }

  Panel panel;
  panel.months.reserve(static_cast<std::size_t>(n));
  for (int m = start; m <= end; ++m) panel.months.push_back(month_from_index(m));
  panel.features.reserve(catalog.size());
  for (const auto& spec : catalog) panel.features.push_back(spec.abbrev);
  if (stats) {
    stats->imputed_cells = (values.array() != values.array()).count();
    stats->interpolated_months = 0;
    for (const auto& s : prepared) stats->interpolated_months += s.interpolated;
  }
  panel.values = impute_knn(values, k_neighbors, panel.features);
  return panel;
}

std::vector<int> panel_labels(const Panel& panel, const std::vector<Announcement>& announcements,
                              const YearMonth& vintage) {
  return build_realtime_labels(announcements, panel.months, vintage);
}

void write_panel_csv(const Panel& panel, const std::vector<int>& labels, const std::string& path) {
  if (!labels.empty() && labels.size() != panel.months.size())
    throw StructuralError("panel_csv: label length mismatch");
  std::ostringstream out;
  out << "month";
  for (const auto& f : panel.features) out << ',' << f;
  if (!labels.empty()) out << ",recession";
  out << '\n';
  for (std::size_t r = 0; r < panel.months.size(); ++r) {
    out << format_month(panel.months[r]);
    for (Eigen::Index c = 0; c < panel.values.cols(); ++c)
      out << ',' << io::format_double(panel.values(static_cast<Eigen::Index>(r), c));
    if (!labels.empty()) out << ',' << labels[r];
    out << '\n';
  }
  io::write_text_file(path, out.str());
}

}  // namespace macrocast::data
