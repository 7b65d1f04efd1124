#include "macrocast/data/calendar.hpp"

#include <cctype>
#include <charconv>

#include "macrocast/errors.hpp"

namespace macrocast::data {

int month_index(const YearMonth& ym) { return ym.year * 12 + (ym.month - 1); }

YearMonth month_from_index(int idx) {
  if (idx < 0) throw StructuralError("negative month index");
  return YearMonth{idx / 12, idx % 12 + 1};
}

YearMonth add_months(const YearMonth& ym, int delta) {
  return month_from_index(month_index(ym) + delta);
}

int months_between(const YearMonth& a, const YearMonth& b) {
  return month_index(a) - month_index(b);
}

YearMonth parse_month(const std::string& text) {
  // exactly "YYYY-MM"
  if (text.size() != 7 || text[4] != '-')
    throw DataError("malformed month '" + text + "', expected YYYY-MM");
  for (int i : {0, 1, 2, 3, 5, 6})
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw DataError("malformed month '" + text + "', expected YYYY-MM");
  int year = 0, month = 0;
  std::from_chars(text.data(), text.data() + 4, year);
  std::from_chars(text.data() + 5, text.data() + 7, month);
  if (month < 1 || month > 12)
    throw DataError("month out of range in '" + text + "'");
  return YearMonth{year, month};
}

std::string format_month(const YearMonth& ym) {
  char buf[8];
  buf[0] = static_cast<char>('0' + (ym.year / 1000) % 10);
  buf[1] = static_cast<char>('0' + (ym.year / 100) % 10);
  buf[2] = static_cast<char>('0' + (ym.year / 10) % 10);
  buf[3] = static_cast<char>('0' + ym.year % 10);
  buf[4] = '-';
  buf[5] = static_cast<char>('0' + ym.month / 10);
  buf[6] = static_cast<char>('0' + ym.month % 10);
  return std::string(buf, 7);
}

bool is_quarter_end(const YearMonth& ym) { return ym.month % 3 == 0; }

std::vector<YearMonth> month_range(const YearMonth& first, const YearMonth& last) {
  if (last < first) throw StructuralError("month_range: last before first");
  std::vector<YearMonth> out;
  out.reserve(static_cast<size_t>(months_between(last, first)) + 1);
  for (int i = month_index(first); i <= month_index(last); ++i)
    out.push_back(month_from_index(i));
  return out;
}

}  // namespace macrocast::data
