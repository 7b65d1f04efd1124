#include "macrocast/data/impute.hpp"

#include <algorithm>
#include <cmath>

#include "macrocast/errors.hpp"

namespace macrocast::data {

namespace {
std::string cell_name(Eigen::Index r, Eigen::Index c,
                      const std::vector<std::string>& names) {
  std::string col = c < static_cast<Eigen::Index>(names.size())
                        ? names[static_cast<std::size_t>(c)]
                        : "column " + std::to_string(c);
  return "row " + std::to_string(r) + ", " + col;
}
}  // namespace

Eigen::MatrixXd impute_knn(const Eigen::MatrixXd& panel, int k,
                           const std::vector<std::string>& column_names) {
  if (k < 1) throw ConfigError("impute_knn: k must be >= 1");
  const Eigen::Index rows = panel.rows(), cols = panel.cols();
  Eigen::MatrixXd out = panel;

  // observation mask frozen up front: imputation is a pure function of input
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> obs(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    bool any = false;
    for (Eigen::Index c = 0; c < cols; ++c) {
      obs(r, c) = !std::isnan(panel(r, c));
      any = any || obs(r, c);
    }
    if (!any && cols > 0)
      throw DataError("impute_knn: row " + std::to_string(r) + " has no observed values");
  }
  for (Eigen::Index c = 0; c < cols; ++c) {
    bool any = false;
    for (Eigen::Index r = 0; r < rows; ++r) any = any || obs(r, c);
    if (!any && rows > 0)
      throw DataError("impute_knn: " + cell_name(0, c, column_names) +
                      ": column has no observed values");
  }

  struct Donor {
    double dist;
    Eigen::Index row;
  };

  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (obs(r, c)) continue;
      std::vector<Donor> donors;
      donors.reserve(static_cast<std::size_t>(rows));
      for (Eigen::Index r2 = 0; r2 < rows; ++r2) {
        if (r2 == r || !obs(r2, c)) continue;
        double sum = 0.0;
        int shared = 0;
        for (Eigen::Index j = 0; j < cols; ++j) {
          if (obs(r, j) && obs(r2, j)) {
            double d = panel(r, j) - panel(r2, j);
            sum += d * d;
            ++shared;
          }
        }
        if (shared == 0) continue;
        donors.push_back({std::sqrt(sum / shared), r2});
      }
      if (donors.size() < static_cast<std::size_t>(k))
        throw DataError("impute_knn: fewer than k=" + std::to_string(k) +
                        " donors for " + cell_name(r, c, column_names));
      std::sort(donors.begin(), donors.end(), [](const Donor& a, const Donor& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        return a.row < b.row;
      });
      double mean = 0.0;
      for (int i = 0; i < k; ++i) mean += panel(donors[static_cast<std::size_t>(i)].row, c);
      out(r, c) = mean / k;
    }
  }
  return out;
}

}  // namespace macrocast::data
