#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace macrocast::data {

// k-nearest-neighbour imputation for a rows-by-columns panel with NaN holes.
//
// For each missing cell (r, c): candidate donors are the other rows that
// observe column c and share at least one observed column with row r.
// Distance is Euclidean over mutually observed columns, normalized by the
// count of shared columns; ties break on row index. The imputed value is the
// mean of column c over the k nearest donors, computed from original values
// only (one pass: imputed cells never feed later distances), which makes the
// operation idempotent.
//
// Errors: k < 1 (ConfigError); a column with no observed values, a row with
// no observed values, or fewer than k usable donors for some cell (DataError
// naming the cell).
Eigen::MatrixXd impute_knn(const Eigen::MatrixXd& panel, int k,
                           const std::vector<std::string>& column_names = {});

}  // namespace macrocast::data
