#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "macrocast/data/calendar.hpp"
#include "macrocast/data/catalog.hpp"
#include "macrocast/data/labels.hpp"
#include "macrocast/data/vintage.hpp"

namespace macrocast::data {

// Month-by-feature design matrix built from one vintage: daily series
// averaged to months, quarterly levels spline-interpolated to months,
// per-series transform applied, everything aligned to a common monthly grid
// and kNN-imputed. Columns follow catalog order. Values are raw transformed
// growth rates; standardization happens later with stats fit on a training
// range.
struct Panel {
  std::vector<YearMonth> months;  // contiguous, ascending
  Eigen::MatrixXd values;         // months.size() x catalog.size()
  std::vector<std::string> features;
};

struct PanelBuildStats {
  long imputed_cells = 0;        // NaN cells filled by kNN
  long interpolated_months = 0;  // quarterly (series, month) cells filled by the spline
};

// Grid rule: starts at the latest first transformed month across series (so
// no leading holes) and ends at the latest last transformed month (ragged
// trailing edge becomes NaN, then imputed).
//
// Errors: catalog series missing from the vintage, duplicate month for a
// non-daily series, transforms on non-positive levels, too few observations.
Panel build_panel(const VintageFrame& frame, const Catalog& catalog, int k_neighbors,
                  PanelBuildStats* stats = nullptr);

// Labels for the panel's months as knowable at the panel's vintage date.
std::vector<int> panel_labels(const Panel& panel, const std::vector<Announcement>& announcements,
                              const YearMonth& vintage);

void write_panel_csv(const Panel& panel, const std::vector<int>& labels, const std::string& path);

}  // namespace macrocast::data
