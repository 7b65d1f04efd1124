#pragma once

#include <Eigen/Core>

namespace macrocast::eval {

struct Confusion {
  long tp = 0, fp = 0, tn = 0, fn = 0;
  long total() const { return tp + fp + tn + fn; }
};

// A probability at or above the threshold is a recession call (ties count
// positive).
Confusion confusion_at(const Eigen::VectorXd& probs, const Eigen::VectorXd& targets,
                       double threshold);

// Imbalance-aware point metrics. Any metric whose denominator is zero
// reports 0 and raises the degenerate flag instead of dividing.
struct PointMetrics {
  double sensitivity = 0;        // TP / (TP + FN)
  double specificity = 0;        // TN / (FP + TN)
  double precision = 0;          // TP / (TP + FP)
  double balanced_accuracy = 0;  // (sensitivity + specificity) / 2
  double mcc = 0;
  double f1 = 0;  // harmonic mean of precision and sensitivity
  bool degenerate = false;
};

PointMetrics point_metrics(const Confusion& c);

}  // namespace macrocast::eval
