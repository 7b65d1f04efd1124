#include "macrocast/data/vintage.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "macrocast/errors.hpp"
#include "macrocast/io/csv.hpp"

namespace macrocast::data {

namespace {
YearMonth parse_obs_month(const std::string& s) {
  if (s.size() == 10 && s[7] == '-') return parse_month(s.substr(0, 7));
  return parse_month(s);
}
}  // namespace

VintageFrame load_vintage_csv(const std::string& path, const YearMonth& vintage_date) {
  auto table = io::read_csv(path);
  const std::vector<std::string> expected = {"series", "obs_month", "value"};
  if (table.header != expected)
    throw DataError("vintage header must be series,obs_month,value: " + path);
  VintageFrame frame;
  frame.vintage_date = vintage_date;
  for (const auto& row : table.rows) {
    YearMonth m = parse_obs_month(row[1]);
    if (!(m < vintage_date))
      throw DataError("observation " + row[0] + " " + format_month(m) +
                      " not before vintage " + format_month(vintage_date) + " in " + path);
    auto& obs = frame.series[row[0]];
    if (!obs.months.empty() && m < obs.months.back())
      throw DataError("out-of-order observations for " + row[0] + " in " + path);
    obs.months.push_back(m);
    obs.values.push_back(io::parse_double(row[2]));
  }
  if (frame.series.empty()) throw DataError("vintage file has no observations: " + path);
  return frame;
}

void write_vintage_csv(const VintageFrame& frame, const std::string& path) {
  std::ostringstream out;
  out << "series,obs_month,value\n";
  for (const auto& [name, obs] : frame.series)
    for (std::size_t i = 0; i < obs.months.size(); ++i)
      out << name << ',' << format_month(obs.months[i]) << ','
          << io::format_double(obs.values[i]) << '\n';
  io::write_text_file(path, out.str());
}

DirectoryVintageStore::DirectoryVintageStore(std::string dir) : dir_(std::move(dir)) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir_)) throw DataError("not a directory: " + dir_);
  for (const auto& entry : fs::directory_iterator(dir_)) {
    if (!entry.is_regular_file()) continue;
    std::string name = entry.path().filename().string();
    if (name.size() == 11 && name.ends_with(".csv")) {
      try {
        vintages_.push_back(parse_month(name.substr(0, 7)));
      } catch (const DataError&) {
        // unrelated csv file, skip
      }
    }
  }
  std::sort(vintages_.begin(), vintages_.end());
  if (vintages_.empty())
    throw DataError("no vintage files (YYYY-MM.csv) found in " + dir_);
}

VintageFrame DirectoryVintageStore::load(const YearMonth& vintage_date) const {
  namespace fs = std::filesystem;
  fs::path p = fs::path(dir_) / (format_month(vintage_date) + ".csv");
  if (!fs::exists(p))
    throw DataError("vintage " + format_month(vintage_date) + " not found in " + dir_);
  return load_vintage_csv(p.string(), vintage_date);
}

std::vector<YearMonth> DirectoryVintageStore::available() const { return vintages_; }

void MemoryVintageStore::put(VintageFrame frame) {
  int key = month_index(frame.vintage_date);
  frames_[key] = std::move(frame);
}

VintageFrame MemoryVintageStore::load(const YearMonth& vintage_date) const {
  auto it = frames_.find(month_index(vintage_date));
  if (it == frames_.end())
    throw DataError("vintage " + format_month(vintage_date) + " not available");
  return it->second;
}

std::vector<YearMonth> MemoryVintageStore::available() const {
  std::vector<YearMonth> out;
  out.reserve(frames_.size());
  for (const auto& [k, v] : frames_) out.push_back(month_from_index(k));
  return out;
}

}  // namespace macrocast::data
