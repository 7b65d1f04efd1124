#include <doctest.h>

#include "macrocast/errors.hpp"
#include "macrocast/pipeline/types.hpp"

using namespace macrocast;
using namespace macrocast::pipeline;

TEST_SUITE("types") {

TEST_CASE("horizon steps include the two-month publication lag") {
  CHECK(horizon_steps(Horizon::Nowcast) == 2);
  CHECK(horizon_steps(Horizon::Immediate) == 3);
  CHECK(horizon_steps(Horizon::Short) == 5);
  CHECK(horizon_steps(Horizon::Medium) == 8);
  CHECK(horizon_steps(Horizon::Long) == 14);

  CHECK(horizon_months_ahead(Horizon::Nowcast) == 0);
  CHECK(horizon_months_ahead(Horizon::Immediate) == 1);
  CHECK(horizon_months_ahead(Horizon::Short) == 3);
  CHECK(horizon_months_ahead(Horizon::Medium) == 6);
  CHECK(horizon_months_ahead(Horizon::Long) == 12);

  for (Horizon h : kAllHorizons)
    CHECK(horizon_steps(h) == horizon_months_ahead(h) + 2);
}

TEST_CASE("names round trip in lowercase") {
  for (ModelKind k : kAllModelKinds) {
    const std::string s = to_string(k);
    for (char c : s) CHECK_FALSE((c >= 'A' && c <= 'Z'));
    CHECK(model_kind_from_string(s) == k);
  }
  for (Horizon h : kAllHorizons) {
    const std::string s = to_string(h);
    for (char c : s) CHECK_FALSE((c >= 'A' && c <= 'Z'));
    CHECK(horizon_from_string(s) == h);
  }
  CHECK(to_string(ModelKind::Gru) == "gru");
  CHECK(to_string(ModelKind::Logit) == "logit");
  CHECK(to_string(ModelKind::Ridge) == "ridge");
  CHECK(to_string(ModelKind::Ffn) == "ffn");
  CHECK(to_string(ModelKind::Lstm) == "lstm");
  CHECK(to_string(Horizon::Nowcast) == "nowcast");
  CHECK(to_string(Horizon::Immediate) == "immediate");
  CHECK(to_string(Horizon::Short) == "short");
  CHECK(to_string(Horizon::Medium) == "medium");
  CHECK(to_string(Horizon::Long) == "long");
}

TEST_CASE("unknown names are config errors") {
  CHECK_THROWS_AS(model_kind_from_string("transformer"), ConfigError);
  CHECK_THROWS_AS(model_kind_from_string("GRU"), ConfigError);
  CHECK_THROWS_AS(model_kind_from_string(""), ConfigError);
  CHECK_THROWS_AS(horizon_from_string("next-year"), ConfigError);
  CHECK_THROWS_AS(horizon_from_string("Nowcast"), ConfigError);
}

TEST_CASE("neural flag separates the model families") {
  CHECK_FALSE(is_neural(ModelKind::Logit));
  CHECK_FALSE(is_neural(ModelKind::Ridge));
  CHECK(is_neural(ModelKind::Ffn));
  CHECK(is_neural(ModelKind::Lstm));
  CHECK(is_neural(ModelKind::Gru));
}

TEST_CASE("the full grids enumerate five of each") {
  int kinds = 0, horizons = 0;
  for (ModelKind k : kAllModelKinds) {
    (void)k;
    ++kinds;
  }
  for (Horizon h : kAllHorizons) {
    (void)h;
    ++horizons;
  }
  CHECK(kinds == 5);
  CHECK(horizons == 5);
}

}  // TEST_SUITE
