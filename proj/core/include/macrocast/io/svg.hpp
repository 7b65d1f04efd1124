#pragma once

#include <string>

#include "macrocast/eval/curves.hpp"

namespace macrocast::io {

// Self-contained SVG line chart over the unit square (ROC / PR curves).
// No external renderer or stylesheet; byte-deterministic output.
std::string curve_svg(const eval::Curve& curve, const std::string& title,
                      const std::string& x_label, const std::string& y_label);

void write_curve_svg(const eval::Curve& curve, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::string& path);

}  // namespace macrocast::io
