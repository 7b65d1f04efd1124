#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace macrocast::eval {

struct CurvePoint {
  double x = 0;          // ROC: false positive rate; PR: recall
  double y = 0;          // ROC: true positive rate; PR: precision
  double threshold = 0;  // call cutoff producing this point (+inf sentinel at the start)
};

struct Curve {
  std::vector<CurvePoint> points;
  double area = 0;  // trapezoid over x
};

// ROC swept over the unique probabilities (descending), anchored at (0,0)
// with a +inf sentinel threshold; the lowest threshold lands on (1,1).
// Trapezoid area equals the concordance probability with ties counted half.
// Single-class targets -> NumericError.
Curve roc_curve(const Eigen::VectorXd& probs, const Eigen::VectorXd& targets);

// Precision-recall with recall ascending. The recall-0 anchor reuses the
// precision at the highest threshold; area integrates precision over recall.
Curve pr_curve(const Eigen::VectorXd& probs, const Eigen::VectorXd& targets);

double auroc(const Eigen::VectorXd& probs, const Eigen::VectorXd& targets);
double auprc(const Eigen::VectorXd& probs, const Eigen::VectorXd& targets);

void write_curve_csv(const Curve& curve, const std::string& path);

}  // namespace macrocast::eval
