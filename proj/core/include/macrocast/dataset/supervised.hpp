#pragma once

#include <Eigen/Core>
#include <vector>

#include "macrocast/data/calendar.hpp"

namespace macrocast::dataset {

// Every model sees 12 consecutive months of features per instance.
inline constexpr int kSequenceLength = 12;

// Column-per-instance tensor: steps[t] is (features x instances), t = 0 the
// oldest month and t = 11 the most recent. The flat view used by
// feed-forward models and the explainers packs feature-major rows:
// flat row f * 12 + t == steps[t] row f.
struct SequenceTensor {
  std::vector<Eigen::MatrixXd> steps;

  Eigen::Index features() const { return steps.empty() ? 0 : steps[0].rows(); }
  Eigen::Index instances() const { return steps.empty() ? 0 : steps[0].cols(); }
};

Eigen::MatrixXd flatten(const SequenceTensor& tensor);
SequenceTensor unflatten(const Eigen::MatrixXd& flat, Eigen::Index features);

struct Supervised {
  SequenceTensor x;
  Eigen::VectorXd y;  // 0/1 recession labels, one per instance
  std::vector<data::YearMonth> target_months;
};

// Pairs target month t with the feature rows t-steps-11 .. t-steps (12 rows,
// most recent last). Instance count = rows - 11 - steps.
// Errors: steps < 1; too few rows to form a single window.
Supervised align_supervised(const Eigen::MatrixXd& panel_values,
                            const std::vector<data::YearMonth>& months,
                            const std::vector<int>& labels, int steps_ahead);

Supervised take(const Supervised& s, Eigen::Index begin, Eigen::Index end);  // [begin, end)
Supervised gather(const Supervised& s, const std::vector<int>& indices);

}  // namespace macrocast::dataset
