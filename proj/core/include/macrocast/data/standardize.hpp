#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace macrocast::data {

// Column-wise location/scale stats, fit once on a training range and then
// frozen: out-of-sample rows are standardized with these exact values.
struct StandardizeStats {
  Eigen::VectorXd mean;
  Eigen::VectorXd sd;  // population SD (divide by n)
};

// Fits on the first fit_rows rows (fit_rows <= 0 means all rows).
// Zero-variance column -> DataError naming the column.
StandardizeStats fit_standardizer(const Eigen::MatrixXd& panel, Eigen::Index fit_rows = 0,
                                  const std::vector<std::string>& column_names = {});

Eigen::MatrixXd apply_standardizer(const StandardizeStats& stats, const Eigen::MatrixXd& panel);

}  // namespace macrocast::data
