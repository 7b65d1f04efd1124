#include "macrocast/dataset/supervised.hpp"

#include "macrocast/errors.hpp"

namespace macrocast::dataset {

Eigen::MatrixXd flatten(const SequenceTensor& tensor) {
  const Eigen::Index f = tensor.features(), n = tensor.instances();
  Eigen::MatrixXd flat(f * kSequenceLength, n);
  for (int t = 0; t < kSequenceLength; ++t)
    for (Eigen::Index r = 0; r < f; ++r)
      flat.row(r * kSequenceLength + t) = tensor.steps[static_cast<std::size_t>(t)].row(r);
  return flat;
}

SequenceTensor unflatten(const Eigen::MatrixXd& flat, Eigen::Index features) {
  if (flat.rows() != features * kSequenceLength)
    throw StructuralError("unflatten: row count does not match features x 12");
  SequenceTensor out;
  out.steps.assign(kSequenceLength, Eigen::MatrixXd(features, flat.cols()));
  for (int t = 0; t < kSequenceLength; ++t)
    for (Eigen::Index r = 0; r < features; ++r)
      out.steps[static_cast<std::size_t>(t)].row(r) = flat.row(r * kSequenceLength + t);
  return out;
}

Supervised align_supervised(const Eigen::MatrixXd& panel_values,
                            const std::vector<data::YearMonth>& months,
                            const std::vector<int>& labels, int steps_ahead) {
  if (steps_ahead < 1) throw ConfigError("align_supervised: steps_ahead must be >= 1");
  const Eigen::Index rows = panel_values.rows();
  if (static_cast<std::size_t>(rows) != months.size() || months.size() != labels.size())
    throw StructuralError("align_supervised: rows/months/labels mismatch");
  const Eigen::Index count = rows - (kSequenceLength - 1) - steps_ahead;
  if (count < 1)
    throw DataError("align_supervised: " + std::to_string(rows) +
                    " rows cannot form a single " + std::to_string(kSequenceLength) +
                    "-month window at " + std::to_string(steps_ahead) + " steps ahead");

  Supervised out;
  out.x.steps.assign(kSequenceLength, Eigen::MatrixXd(panel_values.cols(), count));
  out.y.resize(count);
  out.target_months.reserve(static_cast<std::size_t>(count));
  for (Eigen::Index j = 0; j < count; ++j) {
    const Eigen::Index target = j + (kSequenceLength - 1) + steps_ahead;
    for (int t = 0; t < kSequenceLength; ++t) {
      const Eigen::Index row = target - steps_ahead - (kSequenceLength - 1) + t;
      out.x.steps[static_cast<std::size_t>(t)].col(j) = panel_values.row(row).transpose();
    }
    out.y(j) = static_cast<double>(labels[static_cast<std::size_t>(target)]);
    out.target_months.push_back(months[static_cast<std::size_t>(target)]);
  }
  return out;
}

Supervised take(const Supervised& s, Eigen::Index begin, Eigen::Index end) {
  if (begin < 0 || end > s.x.instances() || begin >= end)
    throw StructuralError("take: bad range");
  Supervised out;
  out.x.steps.reserve(s.x.steps.size());
  for (const auto& m : s.x.steps) out.x.steps.push_back(m.middleCols(begin, end - begin));
  out.y = s.y.segment(begin, end - begin);
  out.target_months.assign(s.target_months.begin() + begin, s.target_months.begin() + end);
  return out;
}

Supervised gather(const Supervised& s, const std::vector<int>& indices) {
  Supervised out;
  const Eigen::Index n = static_cast<Eigen::Index>(indices.size());
  out.x.steps.assign(s.x.steps.size(), Eigen::MatrixXd(s.x.features(), n));
  out.y.resize(n);
  out.target_months.reserve(indices.size());
  for (Eigen::Index j = 0; j < n; ++j) {
    int idx = indices[static_cast<std::size_t>(j)];
    if (idx < 0 || idx >= s.x.instances()) throw StructuralError("gather: index out of range");
    for (std::size_t t = 0; t < s.x.steps.size(); ++t)
      out.x.steps[t].col(j) = s.x.steps[t].col(idx);
    out.y(j) = s.y(idx);
    out.target_months.push_back(s.target_months[static_cast<std::size_t>(idx)]);
  }
  return out;
}

}  // namespace macrocast::dataset
