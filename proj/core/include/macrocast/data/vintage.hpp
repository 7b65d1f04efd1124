#pragma once

#include <map>
#include <string>
#include <vector>

#include "macrocast/data/calendar.hpp"

namespace macrocast::data {

// One observation as published in a data vintage. Daily series carry their
// month stamp repeated (one row per trading day); everything else is one row
// per observation month.
struct SeriesObservations {
  std::vector<YearMonth> months;  // ascending; repeats allowed for daily data
  std::vector<double> values;
};

// Snapshot of every series exactly as it looked on the vintage date.
struct VintageFrame {
  YearMonth vintage_date;
  std::map<std::string, SeriesObservations> series;
};

// One vintage per file, named YYYY-MM.csv, columns: series,obs_month,value.
// obs_month accepts YYYY-MM or YYYY-MM-DD (the day is dropped; daily series
// list one row per day). Every observation must predate the vintage date.
VintageFrame load_vintage_csv(const std::string& path, const YearMonth& vintage_date);
void write_vintage_csv(const VintageFrame& frame, const std::string& path);

// Access to a directory of vintages (or an in-memory stand-in for tests).
class VintageStore {
public:
  virtual ~VintageStore() = default;
  virtual VintageFrame load(const YearMonth& vintage_date) const = 0;
  virtual std::vector<YearMonth> available() const = 0;
};

class DirectoryVintageStore : public VintageStore {
public:
  explicit DirectoryVintageStore(std::string dir);
  VintageFrame load(const YearMonth& vintage_date) const override;
  std::vector<YearMonth> available() const override;

private:
  std::string dir_;
  std::vector<YearMonth> vintages_;
};

class MemoryVintageStore : public VintageStore {
public:
  void put(VintageFrame frame);
  VintageFrame load(const YearMonth& vintage_date) const override;
  std::vector<YearMonth> available() const override;

private:
  std::map<int, VintageFrame> frames_;  // keyed by month index
};

}  // namespace macrocast::data
