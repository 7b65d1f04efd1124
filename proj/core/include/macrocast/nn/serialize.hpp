#pragma once

#include <memory>
#include <string>

#include "macrocast/nn/model.hpp"

namespace macrocast::nn {

// JSON model bundle: architecture tag, init-seed record, and a name -> array
// map with explicit shapes for every parameter block. Doubles render with
// shortest round-trip precision, so save/load/save is byte-identical and
// load reproduces parameters bit-exactly.
std::string model_to_json(const Model& model);
std::unique_ptr<Model> model_from_json(const std::string& text);

void save_model(const Model& model, const std::string& path);
std::unique_ptr<Model> load_model(const std::string& path);

}  // namespace macrocast::nn
