#include "macrocast/data/catalog.hpp"

#include <set>
#include <sstream>

#include "macrocast/errors.hpp"
#include "macrocast/io/csv.hpp"

namespace macrocast::data {

const Catalog& builtin_catalog() {
  static const Catalog cat = {
      {"AHETPI", Group::Income, Transform::PercentChange, Frequency::Monthly},
      {"AWHNONAG", Group::Labor, Transform::PercentChange, Frequency::Monthly},
      {"BAA", Group::Money, Transform::FirstDifference, Frequency::Monthly},
      {"BAA10YM", Group::Money, Transform::FirstDifference, Frequency::Monthly},
      {"CMRMTSPL", Group::Output, Transform::LogGrowth, Frequency::Monthly},
      {"CP", Group::Income, Transform::LogGrowth, Frequency::Quarterly},
      {"DSPIC96", Group::Income, Transform::LogGrowth, Frequency::Monthly},
      {"FEDFUNDS", Group::Financial, Transform::FirstDifference, Frequency::Monthly},
      {"GDPC1", Group::Output, Transform::LogGrowth, Frequency::Quarterly},
      {"HOUST", Group::Housing, Transform::LogGrowth, Frequency::Monthly},
      {"INDPRO", Group::Output, Transform::LogGrowth, Frequency::Monthly},
      {"M1REAL", Group::Money, Transform::FirstDifference, Frequency::Monthly},
      {"M2REAL", Group::Money, Transform::FirstDifference, Frequency::Monthly},
      {"PAYEMS", Group::Labor, Transform::LogGrowth, Frequency::Monthly},
      {"PCEC96", Group::Prices, Transform::LogGrowth, Frequency::Monthly},
      {"PERMIT", Group::Housing, Transform::LogGrowth, Frequency::Monthly},
      {"PPIACO", Group::Prices, Transform::LogGrowth, Frequency::Monthly},
      {"PRFI", Group::Housing, Transform::LogGrowth, Frequency::Quarterly},
      {"SP500", Group::Financial, Transform::LogGrowth, Frequency::Daily},
      {"T5Y3MM", Group::Financial, Transform::FirstDifference, Frequency::Monthly},
      {"TB3MS", Group::Financial, Transform::FirstDifference, Frequency::Monthly},
      {"UMCSENT", Group::Prices, Transform::LogGrowth, Frequency::Monthly},
      {"UNRATE", Group::Labor, Transform::FirstDifference, Frequency::Monthly},
      {"W875RX1", Group::Income, Transform::LogGrowth, Frequency::Monthly},
      {"WPSFD49207", Group::Prices, Transform::LogGrowth, Frequency::Monthly},
  };
  return cat;
}

std::string to_string(Group g) {
  switch (g) {
    case Group::Output: return "output";
    case Group::Labor: return "labor";
    case Group::Income: return "income";
    case Group::Money: return "money";
    case Group::Prices: return "prices";
    case Group::Housing: return "housing";
    case Group::Financial: return "financial";
  }
  throw StructuralError("bad Group");
}

std::string to_string(Transform t) {
  switch (t) {
    case Transform::LogGrowth: return "log_growth";
    case Transform::PercentChange: return "percent_change";
    case Transform::FirstDifference: return "first_difference";
  }
  throw StructuralError("bad Transform");
}

std::string to_string(Frequency f) {
  switch (f) {
    case Frequency::Monthly: return "monthly";
    case Frequency::Quarterly: return "quarterly";
    case Frequency::Daily: return "daily";
  }
  throw StructuralError("bad Frequency");
}

Group group_from_string(const std::string& s) {
  if (s == "output") return Group::Output;
  if (s == "labor") return Group::Labor;
  if (s == "income") return Group::Income;
  if (s == "money") return Group::Money;
  if (s == "prices") return Group::Prices;
  if (s == "housing") return Group::Housing;
  if (s == "financial") return Group::Financial;
  throw DataError("unknown series group: '" + s + "'");
}

Transform transform_from_string(const std::string& s) {
  if (s == "log_growth") return Transform::LogGrowth;
  if (s == "percent_change") return Transform::PercentChange;
  if (s == "first_difference") return Transform::FirstDifference;
  throw DataError("unknown transform: '" + s + "'");
}

Frequency frequency_from_string(const std::string& s) {
  if (s == "monthly") return Frequency::Monthly;
  if (s == "quarterly") return Frequency::Quarterly;
  if (s == "daily") return Frequency::Daily;
  throw DataError("unknown frequency: '" + s + "'");
}

void validate_catalog(const Catalog& cat) {
  if (cat.empty()) throw DataError("catalog is empty");
  std::set<std::string> seen;
  for (const auto& s : cat) {
    if (s.abbrev.empty()) throw DataError("catalog entry with empty series name");
    if (!seen.insert(s.abbrev).second)
      throw DataError("duplicate catalog series: " + s.abbrev);
  }
}

Catalog load_catalog_csv(const std::string& path) {
  auto table = io::read_csv(path);
  const std::vector<std::string> expected = {"series", "group", "transform", "frequency"};
  if (table.header != expected)
    throw DataError("catalog header must be series,group,transform,frequency: " + path);
  Catalog cat;
  for (const auto& row : table.rows) {
    cat.push_back(SeriesSpec{row[0], group_from_string(row[1]),
                             transform_from_string(row[2]),
                             frequency_from_string(row[3])});
  }
  validate_catalog(cat);
  return cat;
}

void write_catalog_csv(const Catalog& cat, const std::string& path) {
  std::ostringstream out;
  out << "series,group,transform,frequency\n";
  for (const auto& s : cat)
    out << s.abbrev << ',' << to_string(s.group) << ',' << to_string(s.transform)
        << ',' << to_string(s.frequency) << '\n';
  io::write_text_file(path, out.str());
}

}  // namespace macrocast::data
