#pragma once

#include <vector>

namespace macrocast::data {

// Natural cubic spline: zero second derivative at both ends, exact at knots.
// Two knots degenerate to a straight line. No extrapolation: evaluating
// outside [x_front, x_back] throws DataError.
class NaturalCubicSpline {
public:
  NaturalCubicSpline(std::vector<double> x, std::vector<double> y);

  double evaluate(double xq) const;

private:
  std::vector<double> x_, y_, m_;  // m_ = second derivatives at knots
};

// Interpolates quarterly levels (knots at terminal-month indices) onto every
// month in [first knot, last knot]. Returns one value per month, knot months
// exact.
std::vector<double> spline_fill_months(const std::vector<int>& knot_month_indices,
                                       const std::vector<double>& values,
                                       int first_month_index, int last_month_index);

}  // namespace macrocast::data
