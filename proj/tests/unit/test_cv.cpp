#include <doctest.h>

#include "macrocast/dataset/cv.hpp"
#include "macrocast/errors.hpp"

using namespace macrocast;
using namespace macrocast::dataset;

TEST_SUITE("cv") {

TEST_CASE("the 476-instance layout") {
  auto splits = blocked_cv_splits(476);
  REQUIRE(splits.size() == 2);
  CHECK(splits[0].train_begin == 0);
  CHECK(splits[0].train_end == 220);
  CHECK(splits[0].val_begin == 220);
  CHECK(splits[0].val_end == 348);
  CHECK(splits[1].train_begin == 0);
  CHECK(splits[1].train_end == 348);
  CHECK(splits[1].val_begin == 348);
  CHECK(splits[1].val_end == 476);
}

TEST_CASE("257 instances give exactly one split") {
  auto splits = blocked_cv_splits(257);
  REQUIRE(splits.size() == 1);
  CHECK(splits[0].train_end == 129);
  CHECK(splits[0].val_end == 257);
}

TEST_CASE("first training block is the remainder and is always longer than one block") {
  for (int n : {257, 300, 383, 385, 476, 511, 513, 1000, 1279}) {
    auto splits = blocked_cv_splits(n);
    const int l = n - 128 * (n / 128 - 1);
    REQUIRE(!splits.empty());
    CHECK(splits[0].train_end == l);
    CHECK(l > 128);
    CHECK(l <= 2 * 128);
    for (std::size_t i = 0; i < splits.size(); ++i) {
      CHECK(splits[i].train_begin == 0);                           // expanding window
      CHECK(splits[i].val_end - splits[i].val_begin == 128);       // fixed block
      CHECK(splits[i].val_begin == splits[i].train_end);           // contiguous
      if (i > 0) CHECK(splits[i].train_end == splits[i - 1].val_end);
    }
    CHECK(splits.back().val_end == n);  // coverage through the last instance
    CHECK(static_cast<int>(splits.size()) == n / 128 - 1);
  }
}

TEST_CASE("custom validation block length") {
  auto splits = blocked_cv_splits(100, 30);
  REQUIRE(splits.size() == 2);
  CHECK(splits[0].train_end == 40);
  CHECK(splits[0].val_end == 70);
  CHECK(splits[1].val_end == 100);
}

TEST_CASE("degenerate sizes are rejected") {
  CHECK_THROWS_AS(blocked_cv_splits(256), DataError);   // divisible by the block
  CHECK_THROWS_AS(blocked_cv_splits(384), DataError);
  CHECK_THROWS_AS(blocked_cv_splits(256, 128), DataError);
  CHECK_THROWS_AS(blocked_cv_splits(200), DataError);   // too small for one split
  CHECK_THROWS_AS(blocked_cv_splits(0), DataError);
  CHECK_THROWS_AS(blocked_cv_splits(100, 0), ConfigError);
  CHECK_NOTHROW(blocked_cv_splits(257));
}

}  // TEST_SUITE
