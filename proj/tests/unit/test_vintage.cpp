#include <doctest.h>

#include "fixtures.hpp"
#include "macrocast/data/vintage.hpp"
#include "macrocast/errors.hpp"
#include "macrocast/io/csv.hpp"

using namespace macrocast;
using data::YearMonth;

TEST_SUITE("vintage") {

TEST_CASE("vintage csv round trips, daily months repeated") {
  fixtures::TempDir dir("vintage");
  const std::string path = dir.path() + "/2020-05.csv";
  data::VintageFrame frame;
  frame.vintage_date = {2020, 5};
  frame.series["ALPHA"] = {{{2020, 1}, {2020, 2}, {2020, 3}}, {1.0, 2.5, 3.25}};
  frame.series["SP500"] = {{{2020, 3}, {2020, 3}, {2020, 4}}, {10.0, 11.0, 12.0}};
  data::write_vintage_csv(frame, path);
  auto loaded = data::load_vintage_csv(path, {2020, 5});
  CHECK(loaded.vintage_date == YearMonth{2020, 5});
  REQUIRE(loaded.series.count("ALPHA") == 1);
  REQUIRE(loaded.series.count("SP500") == 1);
  CHECK(loaded.series["ALPHA"].values == std::vector<double>{1.0, 2.5, 3.25});
  CHECK(loaded.series["SP500"].months ==
        std::vector<YearMonth>{{2020, 3}, {2020, 3}, {2020, 4}});
}

TEST_CASE("daily observation dates may carry a day that is dropped") {
  fixtures::TempDir dir("vintage");
  const std::string path = dir.path() + "/2020-05.csv";
  io::write_text_file(path,
                      "series,obs_month,value\n"
                      "SP500,2020-03-15,10\n"
                      "SP500,2020-03-31,11\n"
                      "SP500,2020-04-01,12\n");
  auto loaded = data::load_vintage_csv(path, {2020, 5});
  CHECK(loaded.series["SP500"].months ==
        std::vector<YearMonth>{{2020, 3}, {2020, 3}, {2020, 4}});
}

TEST_CASE("observations at or after the vintage date are rejected") {
  fixtures::TempDir dir("vintage");
  const std::string path = dir.path() + "/2020-05.csv";
  io::write_text_file(path, "series,obs_month,value\nALPHA,2020-05,1\n");
  CHECK_THROWS_AS(data::load_vintage_csv(path, {2020, 5}), DataError);
  io::write_text_file(path, "series,obs_month,value\nALPHA,2020-06,1\n");
  CHECK_THROWS_AS(data::load_vintage_csv(path, {2020, 5}), DataError);
}

TEST_CASE("directory store lists vintages in ascending order") {
  fixtures::TempDir dir("store");
  for (const char* name : {"2020-03.csv", "2019-12.csv", "2020-01.csv"}) {
    data::VintageFrame frame;
    frame.vintage_date = data::parse_month(std::string(name).substr(0, 7));
    frame.series["A"] = {{{2019, 1}}, {1.0}};
    data::write_vintage_csv(frame, dir.path() + "/" + name);
  }
  data::DirectoryVintageStore store(dir.path());
  auto avail = store.available();
  REQUIRE(avail.size() == 3);
  CHECK(avail[0] == YearMonth{2019, 12});
  CHECK(avail[2] == YearMonth{2020, 3});
  CHECK(store.load({2020, 1}).series.count("A") == 1);
  CHECK_THROWS_AS(store.load({2021, 1}), DataError);
}

TEST_CASE("memory store mirrors the directory store") {
  data::MemoryVintageStore store;
  data::VintageFrame frame;
  frame.vintage_date = {2020, 7};
  frame.series["A"] = {{{2020, 1}}, {5.0}};
  store.put(frame);
  CHECK(store.available() == std::vector<YearMonth>{{2020, 7}});
  CHECK(store.load({2020, 7}).series.at("A").values[0] == 5.0);
  CHECK_THROWS_AS(store.load({2020, 8}), DataError);
}

}  // TEST_SUITE
