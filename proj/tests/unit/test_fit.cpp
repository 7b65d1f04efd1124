#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "macrocast/nn/ffn.hpp"
#include "macrocast/train/early_stop.hpp"
#include "macrocast/train/fit.hpp"
#include "macrocast/train/loss.hpp"

using namespace macrocast;
using namespace macrocast::train;

namespace {

// learnable toy problem: label depends on the window mean of feature 0
dataset::Supervised toy_data(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  dataset::SequenceTensor x;
  for (int t = 0; t < dataset::kSequenceLength; ++t) x.steps.push_back(Eigen::MatrixXd(2, n));
  Eigen::VectorXd y(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double shift = rng.normal(0.0, 1.0);
    for (int t = 0; t < dataset::kSequenceLength; ++t) {
      x.steps[t](0, j) = shift + rng.normal(0.0, 0.3);
      x.steps[t](1, j) = rng.normal(0.0, 1.0);
    }
    y(j) = shift > 0.0 ? 1.0 : 0.0;
  }
  dataset::Supervised s;
  s.x = std::move(x);
  s.y = std::move(y);
  for (Eigen::Index j = 0; j < n; ++j)
    s.target_months.push_back(data::add_months({2000, 1}, static_cast<int>(j)));
  return s;
}

TrainConfig quick_config() {
  TrainConfig cfg;
  cfg.batch_size = 16;
  cfg.learning_rate = 0.02;
  cfg.max_epochs = 30;
  cfg.patience = 5;
  return cfg;
}

double weight_norm(const nn::Model& model) {
  Eigen::VectorXd mask = model.params().weight_mask();
  return model.params().flat().cwiseProduct(mask).norm();
}

}  // namespace

TEST_SUITE("fit") {

TEST_CASE("early stopping requires improvement beyond min_delta") {
  EarlyStopState es;
  es.patience = 2;
  es.min_delta = 0.01;

  CHECK_FALSE(es.observe(1, 1.0));  // first epoch always becomes the best
  CHECK(es.best_epoch == 1);
  CHECK(es.best_val == 1.0);

  CHECK_FALSE(es.observe(2, 0.995));  // within min_delta, not an improvement
  CHECK(es.best_epoch == 1);
  CHECK(es.epochs_since_improvement == 1);

  CHECK_FALSE(es.observe(3, 0.90));  // real improvement resets the counter
  CHECK(es.best_epoch == 3);
  CHECK(es.epochs_since_improvement == 0);

  CHECK_FALSE(es.observe(4, 0.90));
  CHECK_FALSE(es.observe(5, 0.91));
  CHECK(es.observe(6, 0.90));  // third straight non-improving epoch: patience + 1
  CHECK(es.stopped);
  CHECK(es.best_epoch == 3);
  CHECK(es.best_val == 0.90);
}

TEST_CASE("a flat loss curve stops after exactly patience + 1 extra epochs") {
  EarlyStopState es;
  es.patience = 3;
  es.min_delta = 0.0;
  int epoch = 1;
  CHECK_FALSE(es.observe(epoch++, 0.5));
  int extra = 0;
  while (!es.observe(epoch++, 0.5)) ++extra;
  CHECK(extra + 1 == 4);  // patience + 1 observations after the first
  CHECK(es.best_epoch == 1);
}

TEST_CASE("same seeds give identical fits") {
  dataset::Supervised train = toy_data(80, 9001);
  dataset::Supervised val = toy_data(40, 9002);
  TrainConfig cfg = quick_config();

  nn::FfnModel a(2, {4}, 400);
  nn::FfnModel b(2, {4}, 400);
  Rng ra(555), rb(555);
  FitResult fa = fit(a, train, val, cfg, ra);
  FitResult fb = fit(b, train, val, cfg, rb);

  REQUIRE(fa.history.size() == fb.history.size());
  for (std::size_t i = 0; i < fa.history.size(); ++i) {
    CHECK(fa.history[i].train_loss == fb.history[i].train_loss);
    CHECK(fa.history[i].val_loss == fb.history[i].val_loss);
  }
  CHECK(fa.best_epoch == fb.best_epoch);
  CHECK((a.params().flat() - b.params().flat()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("training learns the toy rule and restores the best epoch") {
  dataset::Supervised train = toy_data(120, 9003);
  dataset::Supervised val = toy_data(60, 9004);
  TrainConfig cfg = quick_config();

  nn::FfnModel model(2, {4}, 401);
  const double before = evaluate_loss(model, val);
  Rng rng(556);
  FitResult res = fit(model, train, val, cfg, rng);

  REQUIRE_FALSE(res.history.empty());
  CHECK(res.best_val_loss < before);

  // history tracks the best epoch, and the restored parameters reproduce it
  double min_val = res.history.front().val_loss;
  for (const auto& e : res.history) min_val = std::min(min_val, e.val_loss);
  CHECK(res.best_val_loss == doctest::Approx(min_val).epsilon(1e-12));
  CHECK(evaluate_loss(model, val) == doctest::Approx(res.best_val_loss).epsilon(1e-12));

  // epochs are 1-based and contiguous
  for (std::size_t i = 0; i < res.history.size(); ++i)
    CHECK(res.history[i].epoch == static_cast<int>(i) + 1);
}

TEST_CASE("weight decay shrinks the weight norm") {
  dataset::Supervised train = toy_data(100, 9005);
  dataset::Supervised val = toy_data(50, 9006);
  TrainConfig plain = quick_config();
  TrainConfig decayed = quick_config();
  decayed.weight_decay = 0.1;

  nn::FfnModel a(2, {4}, 402);
  nn::FfnModel b(2, {4}, 402);
  Rng ra(557), rb(557);
  fit(a, train, val, plain, ra);
  fit(b, train, val, decayed, rb);
  CHECK(weight_norm(b) < weight_norm(a));
}

TEST_CASE("an absurd learning rate raises FitDivergedError with partial history") {
  dataset::Supervised train = toy_data(60, 9007);
  dataset::Supervised val = toy_data(30, 9008);
  TrainConfig cfg = quick_config();
  // one batch per epoch; the first step flings every weight to ~5e153, so the
  // epoch-2 L2 term overflows while epoch 1 still finishes cleanly
  cfg.batch_size = 60;
  cfg.learning_rate = 5e153;
  cfg.weight_decay = 0.1;

  nn::FfnModel model(2, {}, 403);
  Rng rng(558);
  try {
    fit(model, train, val, cfg, rng);
    FAIL("expected divergence");
  } catch (const FitDivergedError& e) {
    CHECK(e.history.size() == 1);
    CHECK(std::isfinite(e.history[0].val_loss));
  }
  static_assert(std::is_base_of_v<NumericError, FitDivergedError>);
}

TEST_CASE("dropout training still fits and inference stays deterministic") {
  dataset::Supervised train = toy_data(100, 9009);
  dataset::Supervised val = toy_data(50, 9010);
  TrainConfig cfg = quick_config();
  cfg.dropout = 0.2;

  nn::FfnModel model(2, {6}, 404);
  Rng rng(559);
  FitResult res = fit(model, train, val, cfg, rng);
  CHECK_FALSE(res.history.empty());

  Eigen::VectorXd p1 = predict(model, val);
  Eigen::VectorXd p2 = predict(model, val);
  CHECK((p1 - p2).cwiseAbs().maxCoeff() == 0.0);  // no masks at inference
}

TEST_CASE("evaluate_loss equals the BCE of predict") {
  dataset::Supervised val = toy_data(37, 9011);
  nn::FfnModel model(2, {3}, 405);
  CHECK(evaluate_loss(model, val) ==
        doctest::Approx(bce_loss(predict(model, val), val.y)).epsilon(1e-12));
  CHECK(predict(model, val).size() == 37);
}

TEST_CASE("config validation") {
  dataset::Supervised train = toy_data(20, 9012);
  dataset::Supervised val = toy_data(10, 9013);
  nn::FfnModel model(2, {3}, 406);
  Rng rng(560);

  TrainConfig bad = quick_config();
  bad.max_epochs = 0;
  CHECK_THROWS_AS(fit(model, train, val, bad, rng), ConfigError);
  bad = quick_config();
  bad.batch_size = 0;
  CHECK_THROWS_AS(fit(model, train, val, bad, rng), ConfigError);
  bad = quick_config();
  bad.learning_rate = 0.0;
  CHECK_THROWS_AS(fit(model, train, val, bad, rng), ConfigError);
}

TEST_CASE("history CSV layout") {
  std::vector<EpochStats> hist = {{1, 0.75, 0.8}, {2, 0.5, 0.625}};
  fixtures::TempDir dir("unit");
  const std::string path = dir.path() + "/history.csv";
  write_history_csv(hist, path);

  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "epoch,train_loss,val_loss");
  std::getline(in, line);
  CHECK(line == "1,0.75,0.8");
  std::getline(in, line);
  CHECK(line == "2,0.5,0.625");
  CHECK_FALSE(std::getline(in, line));
}

}  // TEST_SUITE
