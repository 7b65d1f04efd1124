#include "macrocast/nn/dropout.hpp"

#include "macrocast/errors.hpp"

namespace macrocast::nn {

Eigen::MatrixXd dropout_mask(Eigen::Index rows, Eigen::Index cols, double rate, Rng& rng) {
  if (rate < 0.0 || rate >= 1.0)
    throw ConfigError("dropout rate must lie in [0, 1)");
  Eigen::MatrixXd mask(rows, cols);
  if (rate == 0.0) {
    mask.setOnes();
    return mask;
  }
  const double keep_scale = 1.0 / (1.0 - rate);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r)
      mask(r, c) = rng.bernoulli(rate) ? 0.0 : keep_scale;
  return mask;
}

}  // namespace macrocast::nn
