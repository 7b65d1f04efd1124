#include "macrocast/eval/confusion.hpp"

#include <cmath>

#include "macrocast/errors.hpp"

namespace macrocast::eval {

Confusion confusion_at(const Eigen::VectorXd& probs, const Eigen::VectorXd& targets,
                       double threshold) {
  if (probs.size() != targets.size() || probs.size() == 0)
    throw StructuralError("confusion_at: size mismatch or empty input");
  Confusion c;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    const bool call = probs(i) >= threshold;
    const bool actual = targets(i) >= 0.5;
    if (call && actual)
      ++c.tp;
    else if (call && !actual)
      ++c.fp;
    else if (!call && actual)
      ++c.fn;
    else
      ++c.tn;
  }
  return c;
}

namespace {
double safe_ratio(double num, double den, bool& degenerate) {
  if (den == 0.0) {
    degenerate = true;
    return 0.0;
  }
  return num / den;
}
}  // namespace

PointMetrics point_metrics(const Confusion& c) {
  PointMetrics m;
  const double tp = static_cast<double>(c.tp), fp = static_cast<double>(c.fp);
  const double tn = static_cast<double>(c.tn), fn = static_cast<double>(c.fn);
  m.sensitivity = safe_ratio(tp, tp + fn, m.degenerate);
  m.specificity = safe_ratio(tn, fp + tn, m.degenerate);
  m.precision = safe_ratio(tp, tp + fp, m.degenerate);
  m.balanced_accuracy = 0.5 * (m.sensitivity + m.specificity);
  const double radicand = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  if (radicand == 0.0) {
    m.degenerate = true;
    m.mcc = 0.0;
  } else {
    m.mcc = (tp * tn - fp * fn) / std::sqrt(radicand);
  }
  m.f1 = safe_ratio(2.0 * m.precision * m.sensitivity, m.precision + m.sensitivity,
                    m.degenerate);
  return m;
}

}  // namespace macrocast::eval
