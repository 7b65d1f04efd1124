#include "macrocast/linear/serialize.hpp"

#include <json.hpp>

#include "macrocast/errors.hpp"
#include "macrocast/io/csv.hpp"

namespace macrocast::linear {

using nlohmann::json;

std::string linear_to_json(const LogisticParams& params, bool ridge) {
  json j;
  j["kind"] = ridge ? "ridge" : "logit";
  j["input_features"] = params.weights.size();
  j["ridge_lambda"] = params.ridge_lambda;
  json blocks = json::object();
  json w;
  w["rows"] = params.weights.size();
  w["cols"] = 1;
  w["weight"] = true;
  w["data"] = std::vector<double>(params.weights.data(),
                                  params.weights.data() + params.weights.size());
  blocks["w"] = std::move(w);
  json b;
  b["rows"] = 1;
  b["cols"] = 1;
  b["weight"] = false;
  b["data"] = std::vector<double>{params.intercept};
  blocks["b"] = std::move(b);
  j["params"] = std::move(blocks);
  return j.dump(2) + "\n";
}

LogisticParams linear_from_json(const std::string& text, bool* ridge_out) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("linear model JSON parse error: ") + e.what());
  }
  LogisticParams params;
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind != "logit" && kind != "ridge") throw DataError("unknown linear kind: " + kind);
    if (ridge_out) *ridge_out = kind == "ridge";
    params.ridge_lambda = j.at("ridge_lambda").get<double>();
    const json& blocks = j.at("params");
    auto w = blocks.at("w").at("data").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(w.size()) != j.at("input_features").get<Eigen::Index>())
      throw DataError("linear model JSON weight length mismatch");
    params.weights = Eigen::Map<const Eigen::VectorXd>(w.data(),
                                                       static_cast<Eigen::Index>(w.size()));
    auto b = blocks.at("b").at("data").get<std::vector<double>>();
    if (b.size() != 1) throw DataError("linear model JSON intercept length mismatch");
    params.intercept = b[0];
  } catch (const json::exception& e) {
    throw DataError(std::string("linear model JSON structure error: ") + e.what());
  }
  return params;
}

void save_linear(const LogisticParams& params, bool ridge, const std::string& path) {
  io::write_text_file(path, linear_to_json(params, ridge));
}

LogisticParams load_linear(const std::string& path, bool* ridge_out) {
  return linear_from_json(io::read_text_file(path), ridge_out);
}

}  // namespace macrocast::linear
