#pragma once

#include <Eigen/Core>
#include <vector>

#include "macrocast/rng.hpp"

namespace macrocast::nn {

// Inverted-dropout mask: entries are 0 with probability rate, else
// 1/(1-rate), so expected activation scale is unchanged and inference is the
// identity. rate outside [0,1) -> ConfigError.
Eigen::MatrixXd dropout_mask(Eigen::Index rows, Eigen::Index cols, double rate, Rng& rng);

// Fixed masks for one training step. Recurrent layers reuse the same mask at
// every timestep (one draw per sequence batch): input_masks[l] scales layer
// l's input, recurrent_masks[l] scales the previous hidden state feeding the
// gates (the cell/carry path stays unmasked). Feed-forward models use
// input_masks[l] after hidden layer l's ReLU. An empty matrix means identity.
struct DropoutPlan {
  bool active = false;
  std::vector<Eigen::MatrixXd> input_masks;
  std::vector<Eigen::MatrixXd> recurrent_masks;
};

}  // namespace macrocast::nn
