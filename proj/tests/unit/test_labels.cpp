#include <doctest.h>

#include "fixtures.hpp"
#include "macrocast/data/labels.hpp"
#include "macrocast/errors.hpp"

using namespace macrocast;
using data::YearMonth;

namespace {

int label_at(const std::vector<data::Announcement>& anns, const YearMonth& month,
             const YearMonth& vintage) {
  auto v = data::build_realtime_labels(anns, {month}, vintage);
  return v.at(0);
}

}  // namespace

TEST_SUITE("labels") {

TEST_CASE("2008-06 vintage: the December 2007 peak is not yet public") {
  auto anns = fixtures::historical_announcements();
  CHECK(label_at(anns, {2008, 1}, {2008, 6}) == 0);
  for (int m = 1; m <= 6; ++m) CHECK(label_at(anns, {2008, m}, {2008, 6}) == 0);
  // the 2001 recession is fully announced by then: Apr..Nov 2001 are 1
  CHECK(label_at(anns, {2001, 5}, {2008, 6}) == 1);
  CHECK(label_at(anns, {2001, 11}, {2008, 6}) == 1);
  CHECK(label_at(anns, {2001, 3}, {2008, 6}) == 0);   // peak month itself stays expansion
  CHECK(label_at(anns, {2001, 12}, {2008, 6}) == 0);  // month after the trough
}

TEST_CASE("2009-01 vintage: peak public, trough unknown, recession persists") {
  auto anns = fixtures::historical_announcements();
  for (int m = 1; m <= 12; ++m) CHECK(label_at(anns, {2008, m}, {2009, 1}) == 1);
  CHECK(label_at(anns, {2007, 12}, {2009, 1}) == 0);  // peak month itself
  CHECK(label_at(anns, {2009, 6}, {2009, 1}) == 1);   // persists past the data edge
  CHECK(label_at(anns, {2010, 1}, {2009, 1}) == 1);
}

TEST_CASE("2021-08 vintage: the April 2020 trough is public, recession over") {
  auto anns = fixtures::historical_announcements();
  CHECK(label_at(anns, {2020, 5}, {2021, 8}) == 0);
  CHECK(label_at(anns, {2020, 3}, {2021, 8}) == 1);
  CHECK(label_at(anns, {2020, 4}, {2021, 8}) == 1);  // trough month inclusive
  CHECK(label_at(anns, {2020, 2}, {2021, 8}) == 0);  // peak month exclusive
  // at 2021-06 the trough announcement (2021-07) is not yet out
  CHECK(label_at(anns, {2020, 5}, {2021, 6}) == 1);
  CHECK(label_at(anns, {2021, 6}, {2021, 6}) == 1);
}

TEST_CASE("fully revised labels mark each historical recession") {
  auto anns = fixtures::historical_announcements();
  const YearMonth revised{9999, 12};
  CHECK(label_at(anns, {1980, 2}, revised) == 1);
  CHECK(label_at(anns, {1980, 7}, revised) == 1);
  CHECK(label_at(anns, {1980, 8}, revised) == 0);
  CHECK(label_at(anns, {1982, 11}, revised) == 1);
  CHECK(label_at(anns, {1983, 1}, revised) == 0);
  CHECK(label_at(anns, {1991, 3}, revised) == 1);
  CHECK(label_at(anns, {1991, 4}, revised) == 0);
  CHECK(label_at(anns, {2009, 6}, revised) == 1);
  CHECK(label_at(anns, {2009, 7}, revised) == 0);
}

TEST_CASE("months before the first known turning point take the opposite state") {
  auto anns = fixtures::historical_announcements();
  CHECK(label_at(anns, {1979, 1}, {9999, 12}) == 0);  // before the 1980 peak: expansion
  std::vector<data::Announcement> trough_first = {
      {{2000, 6}, data::TurningPointKind::Trough, {2000, 10}}};
  CHECK(label_at(trough_first, {2000, 1}, {9999, 12}) == 1);  // before a trough: recession
  CHECK(label_at(trough_first, {2000, 6}, {9999, 12}) == 1);
  CHECK(label_at(trough_first, {2000, 7}, {9999, 12}) == 0);
}

TEST_CASE("no public announcements means all expansion") {
  auto anns = fixtures::historical_announcements();
  auto labels = data::build_realtime_labels(anns, data::month_range({1975, 1}, {1979, 12}),
                                            {1980, 5});
  for (int l : labels) CHECK(l == 0);
}

TEST_CASE("non-alternating announcements are rejected") {
  std::vector<data::Announcement> bad = {
      {{2000, 1}, data::TurningPointKind::Peak, {2000, 5}},
      {{2001, 1}, data::TurningPointKind::Peak, {2001, 5}},
  };
  CHECK_THROWS_AS(data::build_realtime_labels(bad, {{2000, 6}}, {9999, 12}), DataError);
  // but it is fine if only one of them is public yet
  CHECK_NOTHROW(data::build_realtime_labels(bad, {{2000, 6}}, {2000, 7}));
}

TEST_CASE("later vintages only extend what earlier vintages knew") {
  auto anns = fixtures::historical_announcements();
  auto months = data::month_range({1979, 1}, {2021, 12});
  auto revised = data::build_realtime_labels(anns, months, {9999, 12});
  for (const YearMonth v : {YearMonth{1985, 1}, YearMonth{1995, 1}, YearMonth{2005, 1}}) {
    auto early = data::build_realtime_labels(anns, months, v);
    // months at least a year before the last turning point announced by v
    // are governed by public announcements and must agree with the revision
    YearMonth last_public{0, 1};
    for (const auto& a : anns)
      if (!(v < a.announced) && last_public < a.turning_point) last_public = a.turning_point;
    for (std::size_t i = 0; i < months.size(); ++i) {
      if (data::months_between(last_public, months[i]) >= 12) {
        CHECK(early[i] == revised[i]);
      }
    }
  }
}

TEST_CASE("announcements csv round trips") {
  fixtures::TempDir dir("anns");
  const std::string path = dir.path() + "/announcements.csv";
  auto anns = fixtures::historical_announcements();
  data::write_announcements_csv(anns, path);
  auto loaded = data::load_announcements_csv(path);
  REQUIRE(loaded.size() == anns.size());
  for (std::size_t i = 0; i < anns.size(); ++i) {
    CHECK(loaded[i].turning_point == anns[i].turning_point);
    CHECK(loaded[i].kind == anns[i].kind);
    CHECK(loaded[i].announced == anns[i].announced);
  }
}

}  // TEST_SUITE
