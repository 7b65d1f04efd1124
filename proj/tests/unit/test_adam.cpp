#include <doctest.h>

#include <cmath>

#include "macrocast/rng.hpp"
#include "macrocast/train/adam.hpp"

using namespace macrocast;
using namespace macrocast::train;

TEST_SUITE("adam") {

TEST_CASE("two steps with a constant gradient match the closed form") {
  AdamState opt(2, 0.01);
  Eigen::VectorXd theta(2);
  theta << 1.0, -2.0;
  Eigen::VectorXd g(2);
  g << 0.5, -3.0;

  // with a constant gradient the bias-corrected moments collapse to
  // m_hat = g, v_hat = g^2, so each step moves by lr * g / (|g| + eps)
  Eigen::VectorXd expected = theta;
  for (int t = 1; t <= 2; ++t)
    for (Eigen::Index k = 0; k < 2; ++k)
      expected(k) -= 0.01 * g(k) / (std::abs(g(k)) + 1e-8);

  opt.step(theta, g);
  opt.step(theta, g);
  CHECK(opt.step_count == 2);
  CHECK((theta - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("moment recursion matches a hand-run loop on varying gradients") {
  const double lr = 0.003, b1 = 0.9, b2 = 0.999, eps = 1e-8;
  AdamState opt(3, lr);
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(3);
  Eigen::VectorXd mirror = theta;
  Eigen::VectorXd m = Eigen::VectorXd::Zero(3), v = Eigen::VectorXd::Zero(3);

  Rng rng(31);
  for (int t = 1; t <= 25; ++t) {
    Eigen::VectorXd g(3);
    for (Eigen::Index k = 0; k < 3; ++k) g(k) = rng.normal(0.0, 1.0);

    opt.step(theta, g);

    m = b1 * m + (1.0 - b1) * g;
    v = b2 * v + (1.0 - b2) * g.cwiseProduct(g);
    const double c1 = 1.0 - std::pow(b1, t);
    const double c2 = 1.0 - std::pow(b2, t);
    for (Eigen::Index k = 0; k < 3; ++k)
      mirror(k) -= lr * (m(k) / c1) / (std::sqrt(v(k) / c2) + eps);

    CHECK((theta - mirror).cwiseAbs().maxCoeff() < 1e-13);
  }
  CHECK(opt.step_count == 25);
  CHECK((opt.m - m).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((opt.v - v).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("adam minimizes a simple quadratic") {
  AdamState opt(1, 0.1);
  Eigen::VectorXd theta(1);
  theta << 5.0;
  for (int t = 0; t < 2000; ++t) {
    Eigen::VectorXd g(1);
    g << 2.0 * (theta(0) - 3.0);
    opt.step(theta, g);
  }
  CHECK(theta(0) == doctest::Approx(3.0).epsilon(1e-3));
}

TEST_CASE("clip_global_norm scales only above the threshold and reports the pre-clip norm") {
  Eigen::VectorXd g(2);
  g << 3.0, 4.0;  // norm 5
  Eigen::VectorXd original = g;

  double norm = clip_global_norm(g, 10.0);
  CHECK(norm == doctest::Approx(5.0).epsilon(1e-14));
  CHECK((g - original).cwiseAbs().maxCoeff() == 0.0);  // under the cap, untouched

  norm = clip_global_norm(g, 2.0);
  CHECK(norm == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(g.norm() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(g(0) / g(1) == doctest::Approx(3.0 / 4.0).epsilon(1e-12));  // direction kept
}

TEST_CASE("zero gradient is a no-op for the clip") {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(3);
  const double norm = clip_global_norm(g, 1.0);
  CHECK(norm == 0.0);
  CHECK((g.array() == 0.0).all());
}

}  // TEST_SUITE
