#include <doctest.h>

#include <cmath>

#include "macrocast/eval/confusion.hpp"

using namespace macrocast::eval;

namespace {

PointMetrics metrics_of(long tp, long fn, long fp, long tn) {
  Confusion c;
  c.tp = tp;
  c.fn = fn;
  c.fp = fp;
  c.tn = tn;
  return point_metrics(c);
}

}  // namespace

TEST_SUITE("confusion") {

TEST_CASE("threshold calls with ties counted positive") {
  Eigen::VectorXd p(6), y(6);
  p << 0.9, 0.5, 0.5, 0.3, 0.7, 0.1;
  y << 1.0, 1.0, 0.0, 0.0, 0.0, 1.0;
  Confusion c = confusion_at(p, y, 0.5);
  // calls: 0.9, 0.5, 0.5, 0.7 positive; 0.3, 0.1 negative
  CHECK(c.tp == 2);
  CHECK(c.fp == 2);
  CHECK(c.tn == 1);
  CHECK(c.fn == 1);
  CHECK(c.total() == 6);

  Confusion all = confusion_at(p, y, 0.0);
  CHECK(all.tp + all.fp == 6);
  Confusion none = confusion_at(p, y, 1.0);
  CHECK(none.tp + none.fp == 0);
}

TEST_CASE("a known confusion reproduces its metric table") {
  // tp=18 fn=2 fp=7 tn=152
  PointMetrics m = metrics_of(18, 2, 7, 152);
  CHECK(std::abs(m.sensitivity - 0.900) < 1e-3);
  CHECK(std::abs(m.specificity - 0.956) < 1e-3);
  CHECK(std::abs(m.precision - 0.720) < 1e-3);
  CHECK(std::abs(m.balanced_accuracy - 0.928) < 1e-3);
  CHECK(std::abs(m.mcc - 0.778) < 1e-3);
  CHECK(std::abs(m.f1 - 0.800) < 1e-3);
  CHECK_FALSE(m.degenerate);
}

TEST_CASE("metrics match their written-out formulas") {
  const long tp = 13, fn = 4, fp = 9, tn = 31;
  PointMetrics m = metrics_of(tp, fn, fp, tn);
  const double sens = 13.0 / 17.0;
  const double spec = 31.0 / 40.0;
  const double prec = 13.0 / 22.0;
  CHECK(m.sensitivity == doctest::Approx(sens).epsilon(1e-14));
  CHECK(m.specificity == doctest::Approx(spec).epsilon(1e-14));
  CHECK(m.precision == doctest::Approx(prec).epsilon(1e-14));
  CHECK(m.balanced_accuracy == doctest::Approx((sens + spec) / 2.0).epsilon(1e-14));
  CHECK(m.f1 == doctest::Approx(2.0 * prec * sens / (prec + sens)).epsilon(1e-14));
  const double mcc = (13.0 * 31.0 - 9.0 * 4.0) /
                     std::sqrt((13.0 + 9.0) * (13.0 + 4.0) * (31.0 + 9.0) * (31.0 + 4.0));
  CHECK(m.mcc == doctest::Approx(mcc).epsilon(1e-14));
}

TEST_CASE("zero denominators report zero and flag the result") {
  // no actual positives: sensitivity undefined
  PointMetrics m = metrics_of(0, 0, 5, 10);
  CHECK(m.sensitivity == 0.0);
  CHECK(m.degenerate);

  // no predicted positives: precision undefined, and f1 follows
  m = metrics_of(0, 3, 0, 10);
  CHECK(m.precision == 0.0);
  CHECK(m.f1 == 0.0);
  CHECK(m.degenerate);

  // nothing at all
  m = metrics_of(0, 0, 0, 0);
  CHECK(m.degenerate);
  CHECK(m.mcc == 0.0);

  // fully populated confusion is never degenerate
  m = metrics_of(1, 1, 1, 1);
  CHECK_FALSE(m.degenerate);
}

TEST_CASE("perfect and inverted classifiers bound the MCC") {
  CHECK(metrics_of(10, 0, 0, 20).mcc == doctest::Approx(1.0));
  CHECK(metrics_of(0, 10, 20, 0).mcc == doctest::Approx(-1.0));

  // swapping predicted labels flips the sign
  PointMetrics a = metrics_of(12, 3, 5, 40);
  PointMetrics b = metrics_of(5, 40, 12, 3);  // predictions inverted
  CHECK(a.mcc == doctest::Approx(-b.mcc).epsilon(1e-12));

  // MCC is symmetric under swapping the class roles entirely
  PointMetrics c = metrics_of(40, 5, 3, 12);  // classes relabeled
  CHECK(a.mcc == doctest::Approx(c.mcc).epsilon(1e-12));
}

TEST_CASE("confusion counts partition the sample for any threshold") {
  Eigen::VectorXd p(9), y(9);
  p << 0.05, 0.15, 0.25, 0.35, 0.45, 0.55, 0.65, 0.75, 0.85;
  y << 0, 0, 1, 0, 1, 1, 0, 1, 1;
  for (double t : {0.0, 0.2, 0.45, 0.7, 0.99}) {
    Confusion c = confusion_at(p, y, t);
    CHECK(c.total() == 9);
    CHECK(c.tp + c.fn == 5);  // actual positives conserved
    CHECK(c.fp + c.tn == 4);
  }
}

}  // TEST_SUITE
