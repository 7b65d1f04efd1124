#pragma once

#include <string>

#include "macrocast/linear/logistic.hpp"

namespace macrocast::linear {

// Same bundle layout as the neural models: kind tag ("logit" or "ridge"),
// explicit shapes, round-trip-exact doubles.
std::string linear_to_json(const LogisticParams& params, bool ridge);
LogisticParams linear_from_json(const std::string& text, bool* ridge_out = nullptr);

void save_linear(const LogisticParams& params, bool ridge, const std::string& path);
LogisticParams load_linear(const std::string& path, bool* ridge_out = nullptr);

}  // namespace macrocast::linear
