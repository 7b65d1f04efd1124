#include "macrocast/data/spline.hpp"

#include <algorithm>
#include <string>

#include "macrocast/errors.hpp"

namespace macrocast::data {

NaturalCubicSpline::NaturalCubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2) throw DataError("spline needs at least 2 knots");
  if (y_.size() != n) throw StructuralError("spline: x/y length mismatch");
  for (std::size_t i = 1; i < n; ++i)
    if (x_[i] <= x_[i - 1]) throw DataError("spline knots must be strictly increasing");

  m_.assign(n, 0.0);
  if (n == 2) return;  // natural ends with no interior knots -> line

  // Thomas solve of the interior tridiagonal system for second derivatives.
  const std::size_t k = n - 2;
  std::vector<double> diag(k), rhs(k), upper(k - 1 + 1);
  for (std::size_t i = 0; i < k; ++i) {
    double h0 = x_[i + 1] - x_[i];
    double h1 = x_[i + 2] - x_[i + 1];
    diag[i] = 2.0 * (h0 + h1);
    rhs[i] = 6.0 * ((y_[i + 2] - y_[i + 1]) / h1 - (y_[i + 1] - y_[i]) / h0);
    if (i + 1 < k) upper[i] = h1;
  }
  for (std::size_t i = 1; i < k; ++i) {
    double lower = x_[i + 1] - x_[i];  // same as previous row's upper
    double w = lower / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<double> sol(k);
  sol[k - 1] = rhs[k - 1] / diag[k - 1];
  for (std::size_t i = k - 1; i-- > 0;)
    sol[i] = (rhs[i] - upper[i] * sol[i + 1]) / diag[i];
  for (std::size_t i = 0; i < k; ++i) m_[i + 1] = sol[i];
}

double NaturalCubicSpline::evaluate(double xq) const {
  if (xq < x_.front() || xq > x_.back())
    throw DataError("spline evaluation outside knot range (x=" + std::to_string(xq) + ")");
  auto it = std::upper_bound(x_.begin(), x_.end(), xq);
  std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  if (i >= x_.size() - 1) i = x_.size() - 2;
  double h = x_[i + 1] - x_[i];
  double a = (x_[i + 1] - xq) / h;
  double b = (xq - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

std::vector<double> spline_fill_months(const std::vector<int>& knot_month_indices,
                                       const std::vector<double>& values,
                                       int first_month_index, int last_month_index) {
  if (knot_month_indices.empty()) throw DataError("spline: no knots");
  if (first_month_index < knot_month_indices.front() ||
      last_month_index > knot_month_indices.back())
    throw DataError("spline: requested months extend past knot range");
  std::vector<double> xs(knot_month_indices.begin(), knot_month_indices.end());
  NaturalCubicSpline s(xs, values);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(last_month_index - first_month_index + 1));
  for (int m = first_month_index; m <= last_month_index; ++m)
    out.push_back(s.evaluate(static_cast<double>(m)));
  return out;
}

}  // namespace macrocast::data
