#include "macrocast/nn/serialize.hpp"

#include <json.hpp>

#include "macrocast/errors.hpp"
#include "macrocast/io/csv.hpp"
#include "macrocast/nn/ffn.hpp"
#include "macrocast/nn/recurrent.hpp"

namespace macrocast::nn {

using nlohmann::json;

std::string model_to_json(const Model& model) {
  const ModelArch arch = model.arch();
  json j;
  j["kind"] = arch.kind;
  j["input_features"] = arch.input_features;
  j["seed"] = arch.init_seed;
  if (arch.kind == "ffn") {
    j["hidden"] = arch.hidden;
  } else {
    j["units"] = arch.units;
    j["layers"] = arch.layers;
  }
  json params = json::object();
  const auto& store = model.params();
  for (std::size_t i = 0; i < store.specs().size(); ++i) {
    const auto& spec = store.specs()[i];
    auto m = store.matrix(i);
    json block;
    block["rows"] = spec.rows;
    block["cols"] = spec.cols;
    block["weight"] = spec.is_weight;
    std::vector<double> data(m.data(), m.data() + m.size());  // column-major
    block["data"] = data;
    params[spec.name] = std::move(block);
  }
  j["params"] = std::move(params);
  return j.dump(2) + "\n";
}

std::unique_ptr<Model> model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("model JSON parse error: ") + e.what());
  }
  std::unique_ptr<Model> model;
  try {
    const std::string kind = j.at("kind").get<std::string>();
    const int input_features = j.at("input_features").get<int>();
    const std::uint64_t seed = j.at("seed").get<std::uint64_t>();
    if (kind == "ffn") {
      model = std::make_unique<FfnModel>(input_features,
                                         j.at("hidden").get<std::vector<int>>(), seed);
    } else if (kind == "lstm" || kind == "gru") {
      model = std::make_unique<RecurrentModel>(
          kind == "lstm" ? CellKind::Lstm : CellKind::Gru, input_features,
          j.at("units").get<int>(), j.at("layers").get<int>(), seed);
    } else {
      throw DataError("unknown model kind: " + kind);
    }
    const json& params = j.at("params");
    auto& store = model->params();
    if (params.size() != store.specs().size())
      throw DataError("model JSON parameter count mismatch");
    for (std::size_t i = 0; i < store.specs().size(); ++i) {
      const auto& spec = store.specs()[i];
      if (!params.contains(spec.name))
        throw DataError("model JSON missing parameter " + spec.name);
      const json& block = params.at(spec.name);
      if (block.at("rows").get<Eigen::Index>() != spec.rows ||
          block.at("cols").get<Eigen::Index>() != spec.cols)
        throw DataError("model JSON shape mismatch for " + spec.name);
      auto data = block.at("data").get<std::vector<double>>();
      if (static_cast<Eigen::Index>(data.size()) != spec.rows * spec.cols)
        throw DataError("model JSON data length mismatch for " + spec.name);
      auto m = store.matrix(i);
      std::copy(data.begin(), data.end(), m.data());
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("model JSON structure error: ") + e.what());
  }
  return model;
}

void save_model(const Model& model, const std::string& path) {
  io::write_text_file(path, model_to_json(model));
}

std::unique_ptr<Model> load_model(const std::string& path) {
  return model_from_json(io::read_text_file(path));
}

}  // namespace macrocast::nn
