#include "fixtures.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <stdexcept>

#include "macrocast/data/catalog.hpp"
#include "macrocast/rng.hpp"

namespace fs = std::filesystem;
using namespace macrocast;

namespace fixtures {

TempDir::TempDir(const std::string& tag) {
  std::string tmpl = (fs::temp_directory_path() / (tag + ".XXXXXX")).string();
  std::vector<char> buf(tmpl.begin(), tmpl.end());
  buf.push_back('\0');
  if (!mkdtemp(buf.data())) throw std::runtime_error("mkdtemp failed for " + tmpl);
  path_ = buf.data();
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::vector<data::Announcement> historical_announcements() {
  using data::TurningPointKind;
  auto ym = [](int y, int m) { return data::YearMonth{y, m}; };
  return {
      {ym(1980, 1), TurningPointKind::Peak, ym(1980, 6)},
      {ym(1980, 7), TurningPointKind::Trough, ym(1981, 7)},
      {ym(1981, 7), TurningPointKind::Peak, ym(1982, 1)},
      {ym(1982, 11), TurningPointKind::Trough, ym(1983, 7)},
      {ym(1990, 7), TurningPointKind::Peak, ym(1991, 4)},
      {ym(1991, 3), TurningPointKind::Trough, ym(1992, 12)},
      {ym(2001, 3), TurningPointKind::Peak, ym(2001, 11)},
      {ym(2001, 11), TurningPointKind::Trough, ym(2003, 7)},
      {ym(2007, 12), TurningPointKind::Peak, ym(2008, 12)},
      {ym(2009, 6), TurningPointKind::Trough, ym(2010, 9)},
      {ym(2020, 2), TurningPointKind::Peak, ym(2020, 6)},
      {ym(2020, 4), TurningPointKind::Trough, ym(2021, 7)},
  };
}

namespace {

const std::vector<std::string> kInformative = {"CMRMTSPL", "DSPIC96", "INDPRO", "PAYEMS",
                                               "W875RX1"};

bool is_informative(const std::string& name) {
  for (const auto& s : kInformative)
    if (s == name) return true;
  return false;
}

std::vector<int> draw_regime(const SyntheticSpec& spec,
                             const std::vector<data::YearMonth>& months) {
  Rng rng(derive_seed(spec.seed, 1));
  std::vector<int> s(months.size(), 0);
  for (std::size_t m = 1; m < s.size(); ++m) {
    const double stay = s[m - 1] == 0 ? spec.stay_expansion : spec.stay_recession;
    s[m] = rng.uniform() < stay ? s[m - 1] : 1 - s[m - 1];
  }
  for (std::size_t m = 0; m < s.size() && m < 24; ++m) s[m] = 0;
  auto clamp_range = [&](const data::YearMonth& a, const data::YearMonth& b, int value) {
    for (std::size_t m = 0; m < months.size(); ++m)
      if (!(months[m] < a) && !(b < months[m])) s[m] = value;
  };
  for (const auto& [a, b] : spec.forced_expansions) clamp_range(a, b, 0);
  for (const auto& [a, b] : spec.forced_recessions) clamp_range(a, b, 1);
  s[0] = 0;
  return s;
}

std::vector<data::Announcement> derive_announcements(const std::vector<int>& s,
                                                     const std::vector<data::YearMonth>& months) {
  std::vector<data::Announcement> out;
  std::size_t m = 0;
  while (m < s.size()) {
    if (s[m] == 1) {
      std::size_t b = m;
      while (b + 1 < s.size() && s[b + 1] == 1) ++b;
      if (m > 0) {
        const data::YearMonth peak = months[m - 1];
        out.push_back({peak, data::TurningPointKind::Peak, data::add_months(peak, 3)});
        if (b + 1 < s.size()) {
          const data::YearMonth trough = months[b];
          out.push_back({trough, data::TurningPointKind::Trough, data::add_months(trough, 4)});
        }
      }
      m = b + 1;
    } else {
      ++m;
    }
  }
  return out;
}

double invert_step(double prev, double growth, data::Transform t) {
  switch (t) {
    case data::Transform::LogGrowth: return prev * std::exp(growth);
    case data::Transform::PercentChange: return prev * (1.0 + growth);
    case data::Transform::FirstDifference: return prev + growth;
  }
  throw std::logic_error("bad Transform");
}

// Observation rows for one series over the whole level range; vintages
// truncate this.
data::SeriesObservations full_series(const data::SeriesSpec& series, int series_index,
                                     const SyntheticSpec& spec, const SyntheticWorld& world) {
  Rng rng(derive_seed(spec.seed, 1000 + static_cast<std::uint64_t>(series_index)));
  const std::size_t total = world.months.size();
  const bool informative = is_informative(series.abbrev);
  auto growth_at = [&](std::size_t m) {
    double g = rng.normal() * spec.noise;
    if (informative) {
      const std::size_t look = std::min(m + static_cast<std::size_t>(spec.lead), total - 1);
      g += spec.signal * (1.0 - 2.0 * world.regime[look]);
    }
    return g;
  };

  data::SeriesObservations obs;
  if (series.frequency == data::Frequency::Quarterly) {
    double level = 100.0;
    for (std::size_t m = 0; m < total; ++m) {
      if (!data::is_quarter_end(world.months[m])) continue;
      level = invert_step(level, growth_at(m), series.transform);
      obs.months.push_back(world.months[m]);
      obs.values.push_back(level);
    }
    return obs;
  }
  if (series.frequency == data::Frequency::Daily) {
    double level = 100.0;
    for (std::size_t m = 0; m < total; ++m) {
      level = invert_step(level, growth_at(m), series.transform);
      for (int d = 0; d < 3; ++d) {
        obs.months.push_back(world.months[m]);
        obs.values.push_back(level * std::exp(rng.normal() * 0.002));
      }
    }
    return obs;
  }
  const std::size_t first =
      series.abbrev == "UMCSENT"
          ? static_cast<std::size_t>(data::months_between(spec.short_series_start,
                                                          spec.first_level_month))
          : 0;
  double level = 100.0;
  for (std::size_t m = first; m < total; ++m) {
    level = invert_step(level, growth_at(m), series.transform);
    obs.months.push_back(world.months[m]);
    obs.values.push_back(level);
  }
  return obs;
}

data::SeriesObservations truncate(const data::SeriesObservations& obs,
                                  const data::YearMonth& cutoff) {
  data::SeriesObservations out;
  for (std::size_t i = 0; i < obs.months.size(); ++i) {
    if (cutoff < obs.months[i]) break;
    out.months.push_back(obs.months[i]);
    out.values.push_back(obs.values[i]);
  }
  return out;
}

template <typename Emit>
SyntheticWorld generate(const SyntheticSpec& spec, Emit&& emit) {
  SyntheticWorld world;
  world.months = data::month_range(spec.first_level_month,
                                   data::add_months(spec.first_level_month, spec.total_months - 1));
  world.regime = draw_regime(spec, world.months);
  world.announcements = derive_announcements(world.regime, world.months);

  const data::Catalog& catalog = data::builtin_catalog();
  std::map<std::string, data::SeriesObservations> full;
  std::map<std::string, data::Frequency> freq;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    full[catalog[i].abbrev] = full_series(catalog[i], static_cast<int>(i), spec, world);
    freq[catalog[i].abbrev] = catalog[i].frequency;
  }

  const auto vintages =
      data::month_range(data::add_months(spec.oos_start, -spec.vintage_margin), spec.oos_end);
  for (const auto& v : vintages) {
    data::VintageFrame frame;
    frame.vintage_date = v;
    for (const auto& [name, obs] : full) {
      const int lag = freq[name] == data::Frequency::Daily ? 1 : 2;
      frame.series[name] = truncate(obs, data::add_months(v, -lag));
    }
    emit(std::move(frame));
  }
  return world;
}

}  // namespace

SyntheticWorld write_synthetic_vintages(const std::string& dir, const SyntheticSpec& spec) {
  fs::create_directories(dir);
  SyntheticWorld world = generate(spec, [&](data::VintageFrame frame) {
    const std::string name = data::format_month(frame.vintage_date) + ".csv";
    data::write_vintage_csv(frame, (fs::path(dir) / name).string());
  });
  data::write_announcements_csv(world.announcements,
                                (fs::path(dir) / "announcements.csv").string());
  return world;
}

SyntheticWorld fill_synthetic_vintages(data::MemoryVintageStore& store,
                                       const SyntheticSpec& spec) {
  return generate(spec, [&](data::VintageFrame frame) { store.put(std::move(frame)); });
}

SyntheticSpec micro_spec() {
  SyntheticSpec spec;
  spec.first_level_month = {2000, 1};
  spec.total_months = 216;  // through 2017-12
  spec.short_series_start = {2003, 4};
  spec.oos_start = {2016, 1};
  spec.oos_end = {2017, 12};
  spec.vintage_margin = 12;
  spec.seed = 7141;
  spec.forced_recessions = {{{2016, 6}, {2016, 10}}, {{2017, 6}, {2017, 9}}};
  spec.forced_expansions = {{{2015, 1}, {2016, 5}}, {{2016, 11}, {2017, 5}},
                            {{2017, 10}, {2017, 12}}};
  return spec;
}

}  // namespace fixtures
