#include "macrocast/nn/params.hpp"

#include "macrocast/errors.hpp"

namespace macrocast::nn {

std::size_t ParameterStore::add(const std::string& name, Eigen::Index rows, Eigen::Index cols,
                                bool is_weight) {
  if (finalized_) throw StructuralError("ParameterStore: add after finalize");
  for (const auto& s : specs_)
    if (s.name == name) throw StructuralError("ParameterStore: duplicate name " + name);
  ParamSpec spec{name, rows, cols, is_weight, static_cast<Eigen::Index>(total_)};
  specs_.push_back(spec);
  total_ += static_cast<std::size_t>(rows * cols);
  return specs_.size() - 1;
}

void ParameterStore::finalize() {
  if (finalized_) throw StructuralError("ParameterStore: double finalize");
  values_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(total_));
  finalized_ = true;
}

const ParamSpec& ParameterStore::spec(const std::string& name) const {
  for (const auto& s : specs_)
    if (s.name == name) return s;
  throw StructuralError("ParameterStore: unknown parameter " + name);
}

Eigen::Map<Eigen::MatrixXd> ParameterStore::matrix(std::size_t idx) {
  const auto& s = specs_.at(idx);
  return {values_.data() + s.offset, s.rows, s.cols};
}

Eigen::Map<const Eigen::MatrixXd> ParameterStore::matrix(std::size_t idx) const {
  const auto& s = specs_.at(idx);
  return {values_.data() + s.offset, s.rows, s.cols};
}

Eigen::Map<Eigen::MatrixXd> ParameterStore::matrix_in(Eigen::VectorXd& buf,
                                                      std::size_t idx) const {
  if (buf.size() != size()) throw StructuralError("ParameterStore: buffer size mismatch");
  const auto& s = specs_.at(idx);
  return {buf.data() + s.offset, s.rows, s.cols};
}

Eigen::VectorXd ParameterStore::weight_mask() const {
  Eigen::VectorXd mask = Eigen::VectorXd::Zero(size());
  for (const auto& s : specs_)
    if (s.is_weight) mask.segment(s.offset, s.rows * s.cols).setOnes();
  return mask;
}

}  // namespace macrocast::nn
