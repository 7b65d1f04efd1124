#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <memory>

#include "fixtures.hpp"
#include "macrocast/errors.hpp"
#include "macrocast/linear/serialize.hpp"
#include "macrocast/nn/ffn.hpp"
#include "macrocast/nn/recurrent.hpp"
#include "macrocast/nn/serialize.hpp"

using namespace macrocast;
using namespace macrocast::nn;

namespace {

void scramble_params(Model& model, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::VectorXd& flat = model.params().flat();
  for (Eigen::Index i = 0; i < flat.size(); ++i) flat(i) = rng.normal(0.0, 1.3);
}

void check_roundtrip(const Model& model) {
  const std::string json = model_to_json(model);
  std::unique_ptr<Model> back = model_from_json(json);
  REQUIRE(back != nullptr);

  ModelArch a = model.arch(), b = back->arch();
  CHECK(a.kind == b.kind);
  CHECK(a.input_features == b.input_features);
  CHECK(a.units == b.units);
  CHECK(a.layers == b.layers);
  CHECK(a.hidden == b.hidden);
  CHECK(a.init_seed == b.init_seed);

  REQUIRE(back->params().size() == model.params().size());
  // bit-exact parameter recovery
  for (Eigen::Index i = 0; i < model.params().flat().size(); ++i)
    CHECK(back->params().flat()(i) == model.params().flat()(i));

  // a second dump of the loaded model is byte-identical
  CHECK(model_to_json(*back) == json);
}

}  // namespace

TEST_SUITE("serialize") {

TEST_CASE("every model kind round trips bit-exactly through JSON") {
  FfnModel ffn0(3, {}, 811);
  FfnModel ffn2(3, {5, 2}, 812);
  RecurrentModel lstm(CellKind::Lstm, 4, 3, 2, 813);
  RecurrentModel gru(CellKind::Gru, 4, 3, 1, 814);
  scramble_params(ffn0, 21);
  scramble_params(ffn2, 22);
  scramble_params(lstm, 23);
  scramble_params(gru, 24);
  check_roundtrip(ffn0);
  check_roundtrip(ffn2);
  check_roundtrip(lstm);
  check_roundtrip(gru);
}

TEST_CASE("awkward doubles survive the trip") {
  FfnModel model(1, {}, 815);
  Eigen::VectorXd& flat = model.params().flat();
  REQUIRE(flat.size() >= 6);
  flat(0) = 0.1;               // not representable exactly
  flat(1) = 1.0 / 3.0;
  flat(2) = -2.2250738585072014e-308;  // smallest normal
  flat(3) = 1.7976931348623157e308;    // largest finite
  flat(4) = -0.0;
  flat(5) = 4.9406564584124654e-324;   // smallest subnormal
  std::unique_ptr<Model> back = model_from_json(model_to_json(model));
  for (Eigen::Index i = 0; i < 6; ++i) CHECK(back->params().flat()(i) == flat(i));
}

TEST_CASE("file save and load") {
  fixtures::TempDir dir("unit");
  RecurrentModel model(CellKind::Gru, 3, 2, 2, 816);
  scramble_params(model, 25);
  const std::string path = dir.path() + "/model.json";
  save_model(model, path);
  REQUIRE(std::filesystem::exists(path));
  std::unique_ptr<Model> back = load_model(path);
  CHECK(back->arch().kind == "gru");
  CHECK((back->params().flat() - model.params().flat()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("corrupted or foreign JSON is a data error") {
  CHECK_THROWS_AS(model_from_json("not json at all"), DataError);
  CHECK_THROWS_AS(model_from_json("{}"), DataError);
  CHECK_THROWS_AS(model_from_json(R"({"kind":"transformer"})"), DataError);

  // drop a required parameter block
  FfnModel model(2, {3}, 817);
  std::string json = model_to_json(model);
  const auto pos = json.find("h0.W");
  REQUIRE(pos != std::string::npos);
  std::string broken = json;
  broken.replace(pos, 4, "h9.W");
  CHECK_THROWS_AS(model_from_json(broken), DataError);
}

TEST_CASE("shape mismatch in the payload is a data error") {
  FfnModel model(2, {3}, 818);
  std::string json = model_to_json(model);
  // shrink the declared rows of the first hidden block
  const auto pos = json.find("\"rows\": 3");
  REQUIRE(pos != std::string::npos);
  std::string broken = json;
  broken.replace(pos, 9, "\"rows\": 4");
  CHECK_THROWS_AS(model_from_json(broken), DataError);
}

TEST_CASE("missing model file is a data error") {
  fixtures::TempDir dir("unit");
  CHECK_THROWS_AS(load_model(dir.path() + "/absent.json"), DataError);
}

TEST_CASE("linear bundles round trip with their kind tag") {
  linear::LogisticParams p;
  p.weights = Eigen::VectorXd(3);
  p.weights << 0.25, -1.75, 1.0 / 3.0;
  p.intercept = -0.125;
  p.ridge_lambda = 0.01;

  for (bool ridge : {false, true}) {
    std::string json = linear::linear_to_json(p, ridge);
    bool ridge_back = !ridge;
    linear::LogisticParams q = linear::linear_from_json(json, &ridge_back);
    CHECK(ridge_back == ridge);
    CHECK(q.intercept == p.intercept);
    CHECK(q.ridge_lambda == p.ridge_lambda);
    REQUIRE(q.weights.size() == 3);
    for (Eigen::Index i = 0; i < 3; ++i) CHECK(q.weights(i) == p.weights(i));
    CHECK(linear::linear_to_json(q, ridge) == json);
  }

  fixtures::TempDir dir("unit");
  const std::string path = dir.path() + "/linear.json";
  linear::save_linear(p, true, path);
  bool ridge_back = false;
  linear::LogisticParams q = linear::load_linear(path, &ridge_back);
  CHECK(ridge_back);
  CHECK(q.weights == p.weights);

  CHECK_THROWS_AS(linear::linear_from_json("[1,2,3]"), DataError);
}

TEST_CASE("neural loader rejects linear bundles and vice versa") {
  linear::LogisticParams p;
  p.weights = Eigen::VectorXd::Ones(2);
  CHECK_THROWS_AS(model_from_json(linear::linear_to_json(p, false)), DataError);

  FfnModel model(2, {}, 819);
  CHECK_THROWS_AS(linear::linear_from_json(model_to_json(model)), DataError);
}

}  // TEST_SUITE
