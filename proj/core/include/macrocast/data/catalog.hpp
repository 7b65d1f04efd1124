#pragma once

#include <string>
#include <vector>

namespace macrocast::data {

enum class Group { Output, Labor, Income, Money, Prices, Housing, Financial };
enum class Transform { LogGrowth, PercentChange, FirstDifference };
enum class Frequency { Monthly, Quarterly, Daily };

struct SeriesSpec {
  std::string abbrev;
  Group group;
  Transform transform;
  Frequency frequency;
};

using Catalog = std::vector<SeriesSpec>;

// The 25-series US macro panel the toolkit was built around.
const Catalog& builtin_catalog();

// CSV columns: series,group,transform,frequency
Catalog load_catalog_csv(const std::string& path);
void write_catalog_csv(const Catalog& cat, const std::string& path);

// duplicate abbrevs or unknown enum names -> DataError
void validate_catalog(const Catalog& cat);

std::string to_string(Group g);
std::string to_string(Transform t);
std::string to_string(Frequency f);
Group group_from_string(const std::string& s);
Transform transform_from_string(const std::string& s);
Frequency frequency_from_string(const std::string& s);

}  // namespace macrocast::data
