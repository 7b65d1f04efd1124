#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace macrocast::explain {

struct FeatureImportance {
  std::string feature;
  double importance = 0;
  int rank = 0;  // 1-based, descending importance, ties by catalog order
};

// Collapses per-instance flat attributions (instances x features*12, flat
// index f*12 + t) into per-feature scores: mean |value| over instances and
// timesteps. Returned sorted by rank.
std::vector<FeatureImportance> aggregate_importance(const Eigen::MatrixXd& attributions,
                                                    const std::vector<std::string>& features);

// Spearman rank correlation with average ranks on ties.
// Constant input -> NumericError (correlation undefined).
double spearman(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// Scatter data for a dependence plot: (input value, attribution) per
// instance for one flat feature index, sorted by input value.
struct DependencePoint {
  double x = 0;
  double attribution = 0;
};
std::vector<DependencePoint> dependence_data(const Eigen::MatrixXd& attributions,
                                             const Eigen::MatrixXd& inputs,
                                             Eigen::Index flat_index);

void write_importance_csv(const std::vector<FeatureImportance>& ranking,
                          const std::string& path);

}  // namespace macrocast::explain
