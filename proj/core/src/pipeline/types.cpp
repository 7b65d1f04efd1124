#include "macrocast/pipeline/types.hpp"

#include "macrocast/errors.hpp"

namespace macrocast::pipeline {

int horizon_steps(Horizon h) { return horizon_months_ahead(h) + 2; }

int horizon_months_ahead(Horizon h) {
  switch (h) {
    case Horizon::Nowcast: return 0;
    case Horizon::Immediate: return 1;
    case Horizon::Short: return 3;
    case Horizon::Medium: return 6;
    case Horizon::Long: return 12;
  }
  throw StructuralError("bad Horizon");
}

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::Logit: return "logit";
    case ModelKind::Ridge: return "ridge";
    case ModelKind::Ffn: return "ffn";
    case ModelKind::Lstm: return "lstm";
    case ModelKind::Gru: return "gru";
  }
  throw StructuralError("bad ModelKind");
}

std::string to_string(Horizon h) {
  switch (h) {
    case Horizon::Nowcast: return "nowcast";
    case Horizon::Immediate: return "immediate";
    case Horizon::Short: return "short";
    case Horizon::Medium: return "medium";
    case Horizon::Long: return "long";
  }
  throw StructuralError("bad Horizon");
}

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "logit") return ModelKind::Logit;
  if (s == "ridge") return ModelKind::Ridge;
  if (s == "ffn") return ModelKind::Ffn;
  if (s == "lstm") return ModelKind::Lstm;
  if (s == "gru") return ModelKind::Gru;
  throw ConfigError("unknown model kind: '" + s + "'");
}

Horizon horizon_from_string(const std::string& s) {
  if (s == "nowcast") return Horizon::Nowcast;
  if (s == "immediate") return Horizon::Immediate;
  if (s == "short") return Horizon::Short;
  if (s == "medium") return Horizon::Medium;
  if (s == "long") return Horizon::Long;
  throw ConfigError("unknown horizon: '" + s + "'");
}

bool is_neural(ModelKind k) {
  return k == ModelKind::Ffn || k == ModelKind::Lstm || k == ModelKind::Gru;
}

}  // namespace macrocast::pipeline
