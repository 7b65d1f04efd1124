#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace macrocast::nn {

// Named views into one flat parameter vector. The flat layout lets the
// optimizer, gradient buffers, L2 masks, and snapshots all work on plain
// vectors while the model reads matrices.
struct ParamSpec {
  std::string name;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  bool is_weight = true;  // false for biases (exempt from L2)
  Eigen::Index offset = 0;
};

class ParameterStore {
public:
  // registration phase; call finalize() once before any access
  std::size_t add(const std::string& name, Eigen::Index rows, Eigen::Index cols, bool is_weight);
  void finalize();

  Eigen::Index size() const { return static_cast<Eigen::Index>(total_); }
  const std::vector<ParamSpec>& specs() const { return specs_; }
  const ParamSpec& spec(const std::string& name) const;

  Eigen::VectorXd& flat() { return values_; }
  const Eigen::VectorXd& flat() const { return values_; }

  Eigen::Map<Eigen::MatrixXd> matrix(std::size_t idx);
  Eigen::Map<const Eigen::MatrixXd> matrix(std::size_t idx) const;
  // same-layout view over an external buffer (gradients)
  Eigen::Map<Eigen::MatrixXd> matrix_in(Eigen::VectorXd& buf, std::size_t idx) const;

  // 1.0 where the entry belongs to a weight matrix, 0.0 for biases
  Eigen::VectorXd weight_mask() const;

private:
  std::vector<ParamSpec> specs_;
  Eigen::VectorXd values_;
  std::size_t total_ = 0;
  bool finalized_ = false;
};

}  // namespace macrocast::nn
