#include "macrocast/data/standardize.hpp"

#include <cmath>

#include "macrocast/errors.hpp"

namespace macrocast::data {

StandardizeStats fit_standardizer(const Eigen::MatrixXd& panel, Eigen::Index fit_rows,
                                  const std::vector<std::string>& column_names) {
  const Eigen::Index n = (fit_rows <= 0 || fit_rows > panel.rows()) ? panel.rows() : fit_rows;
  if (n < 2) throw DataError("standardize: need at least 2 rows to fit");
  StandardizeStats stats;
  stats.mean.resize(panel.cols());
  stats.sd.resize(panel.cols());
  for (Eigen::Index c = 0; c < panel.cols(); ++c) {
    double mean = panel.col(c).head(n).mean();
    double var = (panel.col(c).head(n).array() - mean).square().sum() / static_cast<double>(n);
    double sd = std::sqrt(var);
    if (!(sd > 0.0)) {
      std::string name = c < static_cast<Eigen::Index>(column_names.size())
                             ? column_names[static_cast<std::size_t>(c)]
                             : "column " + std::to_string(c);
      throw DataError("standardize: constant column (" + name + ")");
    }
    stats.mean(c) = mean;
    stats.sd(c) = sd;
  }
  return stats;
}

Eigen::MatrixXd apply_standardizer(const StandardizeStats& stats, const Eigen::MatrixXd& panel) {
  if (panel.cols() != stats.mean.size())
    throw StructuralError("standardize: column count mismatch");
  Eigen::MatrixXd out = panel;
  for (Eigen::Index c = 0; c < panel.cols(); ++c)
    out.col(c) = (panel.col(c).array() - stats.mean(c)) / stats.sd(c);
  return out;
}

}  // namespace macrocast::data
