#pragma once

#include <compare>
#include <string>
#include <vector>

namespace macrocast::data {

// Calendar month. All arithmetic runs through a flat month index so that
// adding/subtracting months never touches day-of-month logic.
struct YearMonth {
  int year = 0;
  int month = 1;  // 1..12

  auto operator<=>(const YearMonth&) const = default;
};

// index 0 == 0000-01; strictly monotone in calendar order.
int month_index(const YearMonth& ym);
YearMonth month_from_index(int idx);

YearMonth add_months(const YearMonth& ym, int delta);
// a - b in months.
int months_between(const YearMonth& a, const YearMonth& b);

// Strict "YYYY-MM" parse; throws DataError on malformed input.
YearMonth parse_month(const std::string& text);
std::string format_month(const YearMonth& ym);

// Quarter helpers: a quarterly observation dated by its terminal month
// (Q1 -> 03, Q2 -> 06, ...).
bool is_quarter_end(const YearMonth& ym);

// Inclusive month range.
std::vector<YearMonth> month_range(const YearMonth& first, const YearMonth& last);

}  // namespace macrocast::data
