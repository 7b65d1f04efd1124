#include "macrocast/nn/recurrent.hpp"

#include <cmath>

#include "macrocast/errors.hpp"
#include "macrocast/nn/activations.hpp"

namespace macrocast::nn {

LstmStepResult lstm_step(const Eigen::Ref<const Eigen::MatrixXd>& W,
                         const Eigen::Ref<const Eigen::VectorXd>& b,
                         const Eigen::MatrixXd& h_prev_masked, const Eigen::MatrixXd& x_masked,
                         const Eigen::MatrixXd& c_prev) {
  const Eigen::Index u = h_prev_masked.rows();
  const Eigen::Index in = x_masked.rows();
  const Eigen::Index batch = x_masked.cols();
  if (W.rows() != 4 * u || W.cols() != u + in || b.size() != 4 * u)
    throw StructuralError("lstm_step: weight shape mismatch");

  LstmStepResult res;
  res.concat.resize(u + in, batch);
  res.concat.topRows(u) = h_prev_masked;
  res.concat.bottomRows(in) = x_masked;

  Eigen::MatrixXd pre = (W * res.concat).colwise() + b;
  res.f = sigmoid(pre.middleRows(0, u));
  res.i = sigmoid(pre.middleRows(u, u));
  res.g = tanh_mat(pre.middleRows(2 * u, u));
  res.o = sigmoid(pre.middleRows(3 * u, u));
  res.c = res.f.cwiseProduct(c_prev) + res.i.cwiseProduct(res.g);
  res.tanh_c = tanh_mat(res.c);
  res.h = res.o.cwiseProduct(res.tanh_c);
  return res;
}

GruStepResult gru_step(const Eigen::Ref<const Eigen::MatrixXd>& Wg,
                       const Eigen::Ref<const Eigen::VectorXd>& bg,
                       const Eigen::Ref<const Eigen::MatrixXd>& Wc,
                       const Eigen::Ref<const Eigen::VectorXd>& bc,
                       const Eigen::MatrixXd& h_prev_masked, const Eigen::MatrixXd& h_prev_raw,
                       const Eigen::MatrixXd& x_masked) {
  const Eigen::Index u = h_prev_masked.rows();
  const Eigen::Index in = x_masked.rows();
  const Eigen::Index batch = x_masked.cols();
  if (Wg.rows() != 2 * u || Wg.cols() != u + in || bg.size() != 2 * u)
    throw StructuralError("gru_step: gate weight shape mismatch");
  if (Wc.rows() != u || Wc.cols() != u + in || bc.size() != u)
    throw StructuralError("gru_step: candidate weight shape mismatch");

  GruStepResult res;
  res.concat_g.resize(u + in, batch);
  res.concat_g.topRows(u) = h_prev_masked;
  res.concat_g.bottomRows(in) = x_masked;

  Eigen::MatrixXd pre_g = (Wg * res.concat_g).colwise() + bg;
  res.r = sigmoid(pre_g.middleRows(0, u));
  res.z = sigmoid(pre_g.middleRows(u, u));

  res.concat_c.resize(u + in, batch);
  res.concat_c.topRows(u) = res.r.cwiseProduct(h_prev_masked);
  res.concat_c.bottomRows(in) = x_masked;
  res.cand = tanh_mat((Wc * res.concat_c).colwise() + bc);

  res.h = (1.0 - res.z.array()).matrix().cwiseProduct(h_prev_raw) + res.z.cwiseProduct(res.cand);
  return res;
}

namespace {

struct RecurrentCache : ForwardCache {
  // [layer][t]
  std::vector<std::vector<LstmStepResult>> lstm;
  std::vector<std::vector<GruStepResult>> gru;
  std::vector<std::vector<Eigen::MatrixXd>> h;       // h[layer][t], raw states
  std::vector<Eigen::MatrixXd> h_prev_masked_zero;   // unused; kept simple
  Eigen::MatrixXd top_h;                             // final hidden state fed to readout
  const DropoutPlan* plan = nullptr;                 // must outlive backward
};

Eigen::MatrixXd masked(const Eigen::MatrixXd& v, const std::vector<Eigen::MatrixXd>& masks,
                       std::size_t idx) {
  if (idx < masks.size() && masks[idx].size() > 0) {
    if (masks[idx].rows() != v.rows() || masks[idx].cols() != v.cols())
      throw StructuralError("recurrent: dropout mask shape mismatch");
    return v.cwiseProduct(masks[idx]);
  }
  return v;
}

}  // namespace

RecurrentModel::RecurrentModel(CellKind kind, int input_features, int units, int layers,
                               std::uint64_t seed)
    : kind_(kind), input_features_(input_features), units_(units), layers_(layers), seed_(seed) {
  if (input_features_ < 1) throw ConfigError("recurrent: input_features must be >= 1");
  if (units_ < 1) throw ConfigError("recurrent: units must be >= 1");
  if (layers_ < 1 || layers_ > 2) throw ConfigError("recurrent: layers must be 1 or 2");

  for (int l = 0; l < layers_; ++l) {
    const int in = layer_input_width(l);
    const std::string p = "l" + std::to_string(l) + ".";
    if (kind_ == CellKind::Lstm) {
      w_idx_.push_back(params_.add(p + "W", 4 * units_, units_ + in, true));
      b_idx_.push_back(params_.add(p + "b", 4 * units_, 1, false));
    } else {
      w_idx_.push_back(params_.add(p + "Wg", 2 * units_, units_ + in, true));
      b_idx_.push_back(params_.add(p + "bg", 2 * units_, 1, false));
      wc_idx_.push_back(params_.add(p + "Wc", units_, units_ + in, true));
      bc_idx_.push_back(params_.add(p + "bc", units_, 1, false));
    }
  }
  out_w_ = params_.add("out.W", 1, units_, true);
  out_b_ = params_.add("out.b", 1, 1, false);
  params_.finalize();

  Rng rng(seed);
  auto glorot = [&](std::size_t idx, Eigen::Index fan_out, Eigen::Index fan_in) {
    auto W = params_.matrix(idx);
    double limit = std::sqrt(6.0 / static_cast<double>(fan_out + fan_in));
    for (Eigen::Index c = 0; c < W.cols(); ++c)
      for (Eigen::Index r = 0; r < W.rows(); ++r) W(r, c) = rng.uniform(-limit, limit);
  };
  for (int l = 0; l < layers_; ++l) {
    const int in = layer_input_width(l);
    // every gate block shares the same units x (units+in) shape
    glorot(w_idx_[static_cast<std::size_t>(l)], units_, units_ + in);
    if (kind_ == CellKind::Lstm) {
      // forget gate bias starts at 1 so early training does not flush the carry
      params_.matrix(b_idx_[static_cast<std::size_t>(l)]).col(0).segment(0, units_).setOnes();
    } else {
      glorot(wc_idx_[static_cast<std::size_t>(l)], units_, units_ + in);
    }
  }
  glorot(out_w_, 1, units_);
}

Eigen::VectorXd RecurrentModel::forward(const dataset::SequenceTensor& x, const DropoutPlan* plan,
                                        std::unique_ptr<ForwardCache>* cache_out) const {
  if (x.features() != input_features_)
    throw StructuralError("recurrent: feature width mismatch");
  if (static_cast<int>(x.steps.size()) != dataset::kSequenceLength)
    throw StructuralError("recurrent: expected 12 timesteps");
  const Eigen::Index batch = x.instances();

  auto cache = std::make_unique<RecurrentCache>();
  cache->owner = this;
  cache->batch = batch;
  cache->plan = plan;
  cache->h.assign(static_cast<std::size_t>(layers_), {});
  if (kind_ == CellKind::Lstm)
    cache->lstm.assign(static_cast<std::size_t>(layers_), {});
  else
    cache->gru.assign(static_cast<std::size_t>(layers_), {});

  const bool use_plan = plan != nullptr && plan->active;
  std::vector<Eigen::MatrixXd> layer_in;  // input sequence for the current layer
  layer_in.reserve(x.steps.size());
  for (const auto& s : x.steps) layer_in.push_back(s);

  for (int l = 0; l < layers_; ++l) {
    const std::size_t lu = static_cast<std::size_t>(l);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(units_, batch);
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(units_, batch);
    std::vector<Eigen::MatrixXd> next_in;
    next_in.reserve(layer_in.size());
    for (std::size_t t = 0; t < layer_in.size(); ++t) {
      Eigen::MatrixXd x_m =
          use_plan ? masked(layer_in[t], plan->input_masks, lu) : layer_in[t];
      Eigen::MatrixXd h_m = use_plan ? masked(h, plan->recurrent_masks, lu) : h;
      if (kind_ == CellKind::Lstm) {
        auto step = lstm_step(params_.matrix(w_idx_[lu]), params_.matrix(b_idx_[lu]).col(0),
                              h_m, x_m, c);
        h = step.h;
        c = step.c;
        cache->lstm[lu].push_back(std::move(step));
      } else {
        auto step = gru_step(params_.matrix(w_idx_[lu]), params_.matrix(b_idx_[lu]).col(0),
                             params_.matrix(wc_idx_[lu]), params_.matrix(bc_idx_[lu]).col(0),
                             h_m, h, x_m);
        h = step.h;
        cache->gru[lu].push_back(std::move(step));
      }
      cache->h[lu].push_back(h);
      next_in.push_back(h);
    }
    layer_in = std::move(next_in);
  }

  cache->top_h = cache->h[static_cast<std::size_t>(layers_ - 1)].back();
  Eigen::RowVectorXd logit = (params_.matrix(out_w_) * cache->top_h).row(0);
  logit.array() += params_.flat()(params_.specs()[out_b_].offset);
  Eigen::VectorXd probs(batch);
  for (Eigen::Index j = 0; j < batch; ++j) probs(j) = sigmoid_scalar(logit(j));

  if (cache_out != nullptr) *cache_out = std::move(cache);
  return probs;
}

void RecurrentModel::backward(const ForwardCache& cache_base, const Eigen::VectorXd& dlogit,
                              Eigen::VectorXd& grad) const {
  check_cache(cache_base, this);
  const auto& cache = dynamic_cast<const RecurrentCache&>(cache_base);
  if (dlogit.size() != cache.batch)
    throw StructuralError("recurrent backward: batch mismatch");
  if (grad.size() != params_.size())
    throw StructuralError("recurrent backward: grad size mismatch");

  const Eigen::Index batch = cache.batch;
  const int T = dataset::kSequenceLength;
  const bool use_plan = cache.plan != nullptr && cache.plan->active;

  // readout
  Eigen::MatrixXd dz = dlogit.transpose();  // 1 x batch
  {
    auto dW = params_.matrix_in(grad, out_w_);
    auto db = params_.matrix_in(grad, out_b_);
    dW += dz * cache.top_h.transpose();
    db(0, 0) += dz.sum();
  }

  // dh_seq[t]: gradient flowing into layer l's hidden output at step t from
  // above (readout or the layer on top). Start with the top layer.
  std::vector<Eigen::MatrixXd> dh_seq(static_cast<std::size_t>(T),
                                      Eigen::MatrixXd::Zero(units_, batch));
  dh_seq.back() = params_.matrix(out_w_).transpose() * dz;

  for (int l = layers_ - 1; l >= 0; --l) {
    const std::size_t lu = static_cast<std::size_t>(l);
    const int in_w = layer_input_width(l);
    std::vector<Eigen::MatrixXd> dx_seq(static_cast<std::size_t>(T),
                                        Eigen::MatrixXd::Zero(in_w, batch));
    Eigen::MatrixXd dh_next = Eigen::MatrixXd::Zero(units_, batch);  // from step t+1
    Eigen::MatrixXd dc_next = Eigen::MatrixXd::Zero(units_, batch);

    auto dW = params_.matrix_in(grad, w_idx_[lu]);
    auto db = params_.matrix_in(grad, b_idx_[lu]);

    for (int t = T - 1; t >= 0; --t) {
      const std::size_t tu = static_cast<std::size_t>(t);
      Eigen::MatrixXd dh = dh_seq[tu] + dh_next;

      if (kind_ == CellKind::Lstm) {
        const auto& s = cache.lstm[lu][tu];
        const Eigen::MatrixXd c_prev =
            t > 0 ? cache.lstm[lu][tu - 1].c : Eigen::MatrixXd::Zero(units_, batch);
        Eigen::MatrixXd do_ = dh.cwiseProduct(s.tanh_c)
                                  .cwiseProduct(s.o)
                                  .cwiseProduct((1.0 - s.o.array()).matrix());
        Eigen::MatrixXd dc =
            dc_next + dh.cwiseProduct(s.o).cwiseProduct(
                          (1.0 - s.tanh_c.array().square()).matrix());
        Eigen::MatrixXd df = dc.cwiseProduct(c_prev).cwiseProduct(s.f).cwiseProduct(
            (1.0 - s.f.array()).matrix());
        Eigen::MatrixXd di = dc.cwiseProduct(s.g).cwiseProduct(s.i).cwiseProduct(
            (1.0 - s.i.array()).matrix());
        Eigen::MatrixXd dg =
            dc.cwiseProduct(s.i).cwiseProduct((1.0 - s.g.array().square()).matrix());
        dc_next = dc.cwiseProduct(s.f);

        Eigen::MatrixXd dpre(4 * units_, batch);
        dpre.middleRows(0, units_) = df;
        dpre.middleRows(units_, units_) = di;
        dpre.middleRows(2 * units_, units_) = dg;
        dpre.middleRows(3 * units_, units_) = do_;

        dW += dpre * s.concat.transpose();
        db.col(0) += dpre.rowwise().sum();
        Eigen::MatrixXd dconcat = params_.matrix(w_idx_[lu]).transpose() * dpre;
        Eigen::MatrixXd dh_masked = dconcat.topRows(units_);
        Eigen::MatrixXd dx_masked = dconcat.bottomRows(in_w);
        dh_next =
            use_plan ? masked(dh_masked, cache.plan->recurrent_masks, lu) : dh_masked;
        dx_seq[tu] = use_plan ? masked(dx_masked, cache.plan->input_masks, lu) : dx_masked;
      } else {
        const auto& s = cache.gru[lu][tu];
        const Eigen::MatrixXd h_prev_raw =
            t > 0 ? cache.h[lu][tu - 1] : Eigen::MatrixXd::Zero(units_, batch);
        const Eigen::MatrixXd h_prev_masked = s.concat_g.topRows(units_);

        Eigen::MatrixXd dcand = dh.cwiseProduct(s.z).cwiseProduct(
            (1.0 - s.cand.array().square()).matrix());
        Eigen::MatrixXd dz_gate = dh.cwiseProduct(s.cand - h_prev_raw)
                                      .cwiseProduct(s.z)
                                      .cwiseProduct((1.0 - s.z.array()).matrix());
        Eigen::MatrixXd dh_prev_raw = dh.cwiseProduct((1.0 - s.z.array()).matrix());

        // candidate path
        auto dWc = params_.matrix_in(grad, wc_idx_[lu]);
        auto dbc = params_.matrix_in(grad, bc_idx_[lu]);
        dWc += dcand * s.concat_c.transpose();
        dbc.col(0) += dcand.rowwise().sum();
        Eigen::MatrixXd dconcat_c = params_.matrix(wc_idx_[lu]).transpose() * dcand;
        Eigen::MatrixXd drh = dconcat_c.topRows(units_);  // d(r .* h_masked)
        Eigen::MatrixXd dx_masked = dconcat_c.bottomRows(in_w);
        Eigen::MatrixXd dr = drh.cwiseProduct(h_prev_masked)
                                 .cwiseProduct(s.r)
                                 .cwiseProduct((1.0 - s.r.array()).matrix());
        Eigen::MatrixXd dh_masked = drh.cwiseProduct(s.r);

        // gate path
        Eigen::MatrixXd dpre(2 * units_, batch);
        dpre.middleRows(0, units_) = dr;
        dpre.middleRows(units_, units_) = dz_gate;
        dW += dpre * s.concat_g.transpose();
        db.col(0) += dpre.rowwise().sum();
        Eigen::MatrixXd dconcat_g = params_.matrix(w_idx_[lu]).transpose() * dpre;
        dh_masked += dconcat_g.topRows(units_);
        dx_masked += dconcat_g.bottomRows(in_w);

        dh_next = dh_prev_raw +
                  (use_plan ? masked(dh_masked, cache.plan->recurrent_masks, lu) : dh_masked);
        dx_seq[tu] = use_plan ? masked(dx_masked, cache.plan->input_masks, lu) : dx_masked;
      }
    }

    if (l > 0) dh_seq = std::move(dx_seq);
  }
}

DropoutPlan RecurrentModel::make_dropout_plan(Eigen::Index batch, double dropout,
                                              double recurrent_dropout, Rng& rng) const {
  DropoutPlan plan;
  if (dropout == 0.0 && recurrent_dropout == 0.0) return plan;
  plan.active = true;
  for (int l = 0; l < layers_; ++l) {
    plan.input_masks.push_back(
        dropout == 0.0 ? Eigen::MatrixXd()
                       : dropout_mask(layer_input_width(l), batch, dropout, rng));
    plan.recurrent_masks.push_back(
        recurrent_dropout == 0.0 ? Eigen::MatrixXd()
                                 : dropout_mask(units_, batch, recurrent_dropout, rng));
  }
  return plan;
}

ModelArch RecurrentModel::arch() const {
  ModelArch a;
  a.kind = kind_ == CellKind::Lstm ? "lstm" : "gru";
  a.input_features = input_features_;
  a.units = units_;
  a.layers = layers_;
  a.init_seed = seed_;
  return a;
}

}  // namespace macrocast::nn
