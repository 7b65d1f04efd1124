#pragma once

#include <string>

namespace macrocast::pipeline {

enum class ModelKind { Logit, Ridge, Ffn, Lstm, Gru };

// Forecast distance in panel steps: months ahead plus the two-month
// publication lag of the macro data.
enum class Horizon { Nowcast, Immediate, Short, Medium, Long };

inline constexpr Horizon kAllHorizons[] = {Horizon::Nowcast, Horizon::Immediate, Horizon::Short,
                                           Horizon::Medium, Horizon::Long};
inline constexpr ModelKind kAllModelKinds[] = {ModelKind::Logit, ModelKind::Ridge, ModelKind::Ffn,
                                               ModelKind::Lstm, ModelKind::Gru};

int horizon_steps(Horizon h);  // 2, 3, 5, 8, 14
int horizon_months_ahead(Horizon h);  // 0, 1, 3, 6, 12

std::string to_string(ModelKind k);
std::string to_string(Horizon h);
ModelKind model_kind_from_string(const std::string& s);
Horizon horizon_from_string(const std::string& s);

bool is_neural(ModelKind k);

}  // namespace macrocast::pipeline
