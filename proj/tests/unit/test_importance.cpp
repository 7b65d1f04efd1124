#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>

#include "fixtures.hpp"
#include "macrocast/errors.hpp"
#include "macrocast/explain/importance.hpp"
#include "macrocast/rng.hpp"

using namespace macrocast;
using namespace macrocast::explain;

TEST_SUITE("importance") {

TEST_CASE("aggregation is the mean absolute attribution over instances and months") {
  // 2 features x 12 months flattened, 3 instances
  Rng rng(1601);
  Eigen::MatrixXd attr(3, 24);
  for (Eigen::Index i = 0; i < attr.size(); ++i)
    attr(static_cast<Eigen::Index>(i % 3), i / 3) = rng.normal(0.0, 2.0);

  std::vector<std::string> features = {"alpha", "beta"};
  auto ranking = aggregate_importance(attr, features);
  REQUIRE(ranking.size() == 2);

  // brute force per feature
  for (int f = 0; f < 2; ++f) {
    double sum = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int t = 0; t < 12; ++t) sum += std::abs(attr(i, f * 12 + t));
    const double want = sum / 36.0;
    const auto it = std::find_if(ranking.begin(), ranking.end(),
                                 [&](const FeatureImportance& r) {
                                   return r.feature == features[static_cast<std::size_t>(f)];
                                 });
    REQUIRE(it != ranking.end());
    CHECK(it->importance == doctest::Approx(want).epsilon(1e-12));
  }

  // ranks descend with importance
  CHECK(ranking[0].rank == 1);
  CHECK(ranking[1].rank == 2);
  CHECK(ranking[0].importance >= ranking[1].importance);
}

TEST_CASE("importance ties break by catalog order") {
  Eigen::MatrixXd attr = Eigen::MatrixXd::Zero(2, 36);
  // feature 0 and feature 2 get identical mass, feature 1 gets more
  attr.col(0).setConstant(1.0);   // feature 0, month 0
  attr.col(24).setConstant(1.0);  // feature 2, month 0
  attr.col(12).setConstant(5.0);  // feature 1, month 0

  std::vector<std::string> features = {"a", "b", "c"};
  auto ranking = aggregate_importance(attr, features);
  REQUIRE(ranking.size() == 3);
  CHECK(ranking[0].feature == "b");
  CHECK(ranking[0].rank == 1);
  CHECK(ranking[1].feature == "a");  // tie with c, earlier catalog position wins
  CHECK(ranking[1].rank == 2);
  CHECK(ranking[2].feature == "c");
  CHECK(ranking[2].rank == 3);
}

TEST_CASE("aggregation validates the flat width") {
  Eigen::MatrixXd attr = Eigen::MatrixXd::Zero(2, 25);
  CHECK_THROWS_AS(aggregate_importance(attr, {"a", "b"}), StructuralError);
  Eigen::MatrixXd ok = Eigen::MatrixXd::Zero(2, 24);
  CHECK_THROWS_AS(aggregate_importance(ok, {"a"}), StructuralError);
}

TEST_CASE("spearman on hand-computed examples") {
  Eigen::VectorXd a(3), b(3);
  a << 1.0, 2.0, 3.0;
  b << 1.0, 2.0, 3.0;
  CHECK(spearman(a, b) == doctest::Approx(1.0).epsilon(1e-12));

  b << 3.0, 2.0, 1.0;
  CHECK(spearman(a, b) == doctest::Approx(-1.0).epsilon(1e-12));

  b << 1.0, 3.0, 2.0;  // one swapped pair: rho = 1 - 6*2/(3*8) = 0.5
  CHECK(spearman(a, b) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("spearman uses average ranks on ties") {
  // a: ranks 1, 2.5, 2.5, 4; b: ranks 1, 2, 3, 4
  Eigen::VectorXd a(4), b(4);
  a << 10.0, 20.0, 20.0, 30.0;
  b << 1.0, 2.0, 3.0, 4.0;
  // Pearson correlation of the rank vectors
  Eigen::VectorXd ra(4), rb(4);
  ra << 1.0, 2.5, 2.5, 4.0;
  rb << 1.0, 2.0, 3.0, 4.0;
  const double ma = ra.mean(), mb = rb.mean();
  const double num = ((ra.array() - ma) * (rb.array() - mb)).sum();
  const double den = std::sqrt((ra.array() - ma).square().sum() *
                               (rb.array() - mb).square().sum());
  CHECK(spearman(a, b) == doctest::Approx(num / den).epsilon(1e-12));
}

TEST_CASE("spearman is invariant to monotone transforms") {
  Rng rng(1602);
  Eigen::VectorXd a(50), b(50);
  for (Eigen::Index i = 0; i < 50; ++i) {
    a(i) = rng.normal(0.0, 1.0);
    b(i) = rng.normal(0.0, 1.0);
  }
  const double base = spearman(a, b);
  Eigen::VectorXd a3 = a.array().exp();  // strictly increasing transform
  CHECK(spearman(a3, b) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("constant inputs make the correlation undefined") {
  Eigen::VectorXd a(3), b(3);
  a << 1.0, 1.0, 1.0;
  b << 1.0, 2.0, 3.0;
  CHECK_THROWS_AS(spearman(a, b), NumericError);
  CHECK_THROWS_AS(spearman(b, a), NumericError);
  Eigen::VectorXd short_a(1), short_b(1);
  short_a << 1.0;
  short_b << 2.0;
  CHECK_THROWS_AS(spearman(short_a, short_b), StructuralError);
  Eigen::VectorXd c(2);
  c << 1.0, 2.0;
  CHECK_THROWS_AS(spearman(b, c), StructuralError);  // length mismatch
}

TEST_CASE("dependence data pairs inputs with attributions sorted by input") {
  Eigen::MatrixXd attr(3, 24);
  Eigen::MatrixXd inputs(3, 24);
  attr.setZero();
  inputs.setZero();
  const Eigen::Index idx = 13;  // feature 1, month 1
  inputs(0, idx) = 5.0;
  inputs(1, idx) = -2.0;
  inputs(2, idx) = 1.0;
  attr(0, idx) = 0.5;
  attr(1, idx) = -0.25;
  attr(2, idx) = 0.125;

  auto pts = dependence_data(attr, inputs, idx);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0].x == -2.0);
  CHECK(pts[0].attribution == -0.25);
  CHECK(pts[1].x == 1.0);
  CHECK(pts[1].attribution == 0.125);
  CHECK(pts[2].x == 5.0);
  CHECK(pts[2].attribution == 0.5);

  CHECK_THROWS_AS(dependence_data(attr, inputs, 24), StructuralError);
  Eigen::MatrixXd mismatched = Eigen::MatrixXd::Zero(2, 24);
  CHECK_THROWS_AS(dependence_data(attr, mismatched, 0), StructuralError);
}

TEST_CASE("importance CSV layout") {
  std::vector<FeatureImportance> ranking = {{"INDPRO", 0.5, 1}, {"PAYEMS", 0.25, 2}};
  fixtures::TempDir dir("imp");
  const std::string path = dir.path() + "/importance.csv";
  write_importance_csv(ranking, path);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "feature,importance,rank");
  std::getline(in, line);
  CHECK(line == "INDPRO,0.5,1");
  std::getline(in, line);
  CHECK(line == "PAYEMS,0.25,2");
}

}  // TEST_SUITE
