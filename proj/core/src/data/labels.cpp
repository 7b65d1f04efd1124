#include "macrocast/data/labels.hpp"

#include <algorithm>
#include <sstream>

#include "macrocast/errors.hpp"
#include "macrocast/io/csv.hpp"

namespace macrocast::data {

std::vector<Announcement> load_announcements_csv(const std::string& path) {
  auto table = io::read_csv(path);
  const std::vector<std::string> expected = {"turning_point", "kind", "announced"};
  if (table.header != expected)
    throw DataError("announcements header must be turning_point,kind,announced: " + path);
  std::vector<Announcement> out;
  for (const auto& row : table.rows) {
    TurningPointKind kind;
    if (row[1] == "peak")
      kind = TurningPointKind::Peak;
    else if (row[1] == "trough")
      kind = TurningPointKind::Trough;
    else
      throw DataError("unknown turning point kind '" + row[1] + "' in " + path);
    out.push_back({parse_month(row[0]), kind, parse_month(row[2])});
  }
  return out;
}

void write_announcements_csv(const std::vector<Announcement>& anns, const std::string& path) {
  std::ostringstream out;
  out << "turning_point,kind,announced\n";
  for (const auto& a : anns)
    out << format_month(a.turning_point) << ','
        << (a.kind == TurningPointKind::Peak ? "peak" : "trough") << ','
        << format_month(a.announced) << '\n';
  io::write_text_file(path, out.str());
}

std::vector<int> build_realtime_labels(const std::vector<Announcement>& announcements,
                                       const std::vector<YearMonth>& months,
                                       const YearMonth& vintage) {
  std::vector<Announcement> known;
  for (const auto& a : announcements)
    if (!(vintage < a.announced)) known.push_back(a);
  std::sort(known.begin(), known.end(), [](const Announcement& a, const Announcement& b) {
    return a.turning_point < b.turning_point;
  });
  for (std::size_t i = 1; i < known.size(); ++i)
    if (known[i].kind == known[i - 1].kind)
      throw DataError("inconsistent announcements: consecutive " +
                      std::string(known[i].kind == TurningPointKind::Peak ? "peaks" : "troughs") +
                      " at " + format_month(known[i - 1].turning_point) + " and " +
                      format_month(known[i].turning_point));

  std::vector<int> labels(months.size(), 0);
  if (known.empty()) return labels;

  for (std::size_t i = 0; i < months.size(); ++i) {
    const YearMonth& m = months[i];
    // last turning point strictly before m decides the state
    const Announcement* last = nullptr;
    for (const auto& a : known) {
      if (a.turning_point < m)
        last = &a;
      else
        break;
    }
    int rec;
    if (last != nullptr) {
      rec = last->kind == TurningPointKind::Peak ? 1 : 0;
    } else {
      // before the first known turning point: opposite of its implied state
      rec = known.front().kind == TurningPointKind::Peak ? 0 : 1;
    }
    labels[i] = rec;
  }
  return labels;
}

}  // namespace macrocast::data
