#pragma once

#include <string>
#include <utility>
#include <vector>

#include "macrocast/data/calendar.hpp"
#include "macrocast/data/labels.hpp"
#include "macrocast/data/vintage.hpp"

namespace fixtures {

// Scratch directory under the system temp root; removed on destruction.
class TempDir {
public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::string& path() const { return path_; }

private:
  std::string path_;
};

// The historical US business-cycle turning points with their announcement
// dates, 1980 through 2021.
std::vector<macrocast::data::Announcement> historical_announcements();

// Synthetic economy for end-to-end tests: a hidden 2-state regime drives 5 of
// the 25 catalog series with a fixed lead, the rest are noise. Level paths
// are built per series by inverting its catalog transform, quarterly series
// are observed at quarter ends only, the daily series gets 3 rows per month
// and a 1-month publication lag (everything else lags 2 months).
struct SyntheticSpec {
  macrocast::data::YearMonth first_level_month{1970, 1};
  int total_months = 600;
  // This series' history starts late and pins the panel grid start.
  macrocast::data::YearMonth short_series_start{1982, 12};
  macrocast::data::YearMonth oos_start{2017, 1};
  macrocast::data::YearMonth oos_end{2019, 12};
  std::uint64_t seed = 20170101;
  double signal = 0.01;  // informative growth amplitude
  double noise = 0.01;   // idiosyncratic growth sd
  int lead = 3;          // informative series react this many months early
  double stay_expansion = 0.97;
  double stay_recession = 0.85;
  // Extra vintage months written before oos_start (longer horizons read
  // vintages from before the first target month).
  int vintage_margin = 0;
  // Regime overrides applied after the chain is drawn (inclusive ranges).
  std::vector<std::pair<macrocast::data::YearMonth, macrocast::data::YearMonth>>
      forced_recessions{{{2017, 9}, {2018, 2}}, {{2019, 5}, {2019, 8}}};
  std::vector<std::pair<macrocast::data::YearMonth, macrocast::data::YearMonth>>
      forced_expansions{{{2016, 1}, {2017, 8}}, {{2018, 3}, {2019, 4}}, {{2019, 9}, {2019, 12}}};
};

struct SyntheticWorld {
  std::vector<macrocast::data::YearMonth> months;  // level months, ascending
  std::vector<int> regime;                         // 0/1 per level month
  std::vector<macrocast::data::Announcement> announcements;
};

// Builds the world and materializes one vintage frame per month of
// [oos_start, oos_end]. With a directory path, writes YYYY-MM.csv files plus
// announcements.csv there; with a MemoryVintageStore, fills it instead.
SyntheticWorld write_synthetic_vintages(const std::string& dir, const SyntheticSpec& spec);
SyntheticWorld fill_synthetic_vintages(macrocast::data::MemoryVintageStore& store,
                                       const SyntheticSpec& spec);

// A small configuration of the same generator for fast pipeline tests:
// 220 level months, 24 out-of-sample months, panel grid from month 40.
SyntheticSpec micro_spec();

}  // namespace fixtures
