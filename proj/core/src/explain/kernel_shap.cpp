#include "macrocast/explain/kernel_shap.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "macrocast/errors.hpp"

namespace macrocast::explain {

double shapley_kernel_weight(int k, int s) {
  if (s <= 0 || s >= k) return std::numeric_limits<double>::infinity();
  // (k-1) / (C(k,s) * s * (k-s)), binomial evaluated in logs for large k
  double log_binom = std::lgamma(k + 1.0) - std::lgamma(s + 1.0) - std::lgamma(k - s + 1.0);
  return (k - 1.0) /
         (std::exp(log_binom) * static_cast<double>(s) * static_cast<double>(k - s));
}

namespace {

constexpr Eigen::Index kEvalChunkRows = 4096;

// average prediction over background rows for each coalition row of Z
Eigen::VectorXd coalition_values(const PredictFn& predict, const Eigen::VectorXd& x,
                                 const Eigen::MatrixXd& background,
                                 const std::vector<std::vector<char>>& coalitions) {
  const Eigen::Index k = x.size();
  const Eigen::Index nb = background.rows();
  const Eigen::Index m = static_cast<Eigen::Index>(coalitions.size());
  Eigen::VectorXd values(m);

  const Eigen::Index per_chunk = std::max<Eigen::Index>(1, kEvalChunkRows / nb);
  for (Eigen::Index start = 0; start < m; start += per_chunk) {
    const Eigen::Index len = std::min(per_chunk, m - start);
    Eigen::MatrixXd batch(len * nb, k);
    for (Eigen::Index i = 0; i < len; ++i) {
      const auto& z = coalitions[static_cast<std::size_t>(start + i)];
      for (Eigen::Index b = 0; b < nb; ++b) {
        for (Eigen::Index j = 0; j < k; ++j)
          batch(i * nb + b, j) = z[static_cast<std::size_t>(j)] ? x(j) : background(b, j);
      }
    }
    Eigen::VectorXd preds = predict(batch);
    if (preds.size() != len * nb)
      throw StructuralError("kernel_shap: predictor returned wrong row count");
    for (Eigen::Index i = 0; i < len; ++i)
      values(start + i) = preds.segment(i * nb, nb).mean();
  }
  return values;
}

}  // namespace

ShapResult kernel_shap(const PredictFn& predict, const Eigen::VectorXd& instance,
                       const Eigen::MatrixXd& background, int n_coalitions, Rng& rng) {
  const int k = static_cast<int>(instance.size());
  if (k < 2) throw ConfigError("kernel_shap: need at least 2 features");
  if (background.rows() < 1 || background.cols() != instance.size())
    throw StructuralError("kernel_shap: background shape mismatch");
  if (n_coalitions < k + 2)
    throw ConfigError("kernel_shap: n_coalitions must be at least n_features + 2");

  // size distribution proportional to per-size total kernel mass
  std::vector<double> size_cdf(static_cast<std::size_t>(k - 1));
  double mass = 0.0;
  for (int s = 1; s <= k - 1; ++s) {
    mass += (k - 1.0) / (static_cast<double>(s) * static_cast<double>(k - s));
    size_cdf[static_cast<std::size_t>(s - 1)] = mass;
  }

  // Coalitions are drawn proportional to their Shapley kernel weight (size by
  // per-size mass, then a uniform subset of that size), so the sampled rows
  // enter the regression with uniform weight; duplicates act as multiplicity.
  // The empty and full coalitions appear once each with zero regression
  // weight: under the efficiency constraint their residual rows vanish, and
  // their evaluations provide the base value and fx.
  std::vector<std::vector<char>> coalitions;
  coalitions.reserve(static_cast<std::size_t>(n_coalitions));
  coalitions.emplace_back(static_cast<std::size_t>(k), char{0});  // empty
  coalitions.emplace_back(static_cast<std::size_t>(k), char{1});  // full
  std::vector<double> weights = {0.0, 0.0};

  std::vector<int> pool(static_cast<std::size_t>(k));
  for (int i = 0; i < n_coalitions - 2; ++i) {
    double u = rng.uniform() * mass;
    int s = 1 + static_cast<int>(std::lower_bound(size_cdf.begin(), size_cdf.end(), u) -
                                 size_cdf.begin());
    s = std::min(s, k - 1);
    std::iota(pool.begin(), pool.end(), 0);
    // partial Fisher-Yates: first s entries become the coalition
    for (int j = 0; j < s; ++j) {
      int pick = j + static_cast<int>(rng.uniform_u64(static_cast<std::uint64_t>(k - j)));
      std::swap(pool[static_cast<std::size_t>(j)], pool[static_cast<std::size_t>(pick)]);
    }
    std::vector<char> z(static_cast<std::size_t>(k), 0);
    for (int j = 0; j < s; ++j) z[static_cast<std::size_t>(pool[static_cast<std::size_t>(j)])] = 1;
    coalitions.push_back(std::move(z));
    weights.push_back(1.0);
  }

  Eigen::VectorXd values = coalition_values(predict, instance, background, coalitions);
  const double base = values(0);  // empty coalition: prediction over background
  const double fx = values(1);    // full coalition: the instance itself

  // Constrained WLS via eliminating phi_{k-1}:
  //   y_i - z_{i,k-1} (fx - base) = sum_{j<k-1} (z_ij - z_{i,k-1}) phi_j
  const double total = fx - base;
  const Eigen::Index kk = k - 1;
  Eigen::MatrixXd ata = Eigen::MatrixXd::Zero(kk, kk);
  Eigen::VectorXd atb = Eigen::VectorXd::Zero(kk);
  Eigen::VectorXd row(kk);
  for (std::size_t i = 0; i < coalitions.size(); ++i) {
    const double w = weights[i];
    if (!(w > 0.0) || !std::isfinite(w)) continue;
    const auto& z = coalitions[i];
    const double zlast = static_cast<double>(z[static_cast<std::size_t>(k - 1)]);
    for (Eigen::Index j = 0; j < kk; ++j)
      row(j) = static_cast<double>(z[static_cast<std::size_t>(j)]) - zlast;
    const double target = values(static_cast<Eigen::Index>(i)) - base - zlast * total;
    ata.selfadjointView<Eigen::Lower>().rankUpdate(row, w);
    atb += w * target * row;
  }
  ata = ata.selfadjointView<Eigen::Lower>();

  Eigen::LDLT<Eigen::MatrixXd> ldlt(ata);
  if (ldlt.info() != Eigen::Success)
    throw NumericError("kernel_shap: weighted least squares failed; increase n_coalitions");
  const double dmax = ldlt.vectorD().cwiseAbs().maxCoeff();
  if (!(dmax > 0.0) || ldlt.vectorD().cwiseAbs().minCoeff() < dmax * 1e-12)
    throw NumericError(
        "kernel_shap: coalition sample is rank deficient; increase n_coalitions");
  Eigen::VectorXd phi_head = ldlt.solve(atb);

  ShapResult res;
  res.phi.resize(k);
  res.phi.head(kk) = phi_head;
  res.phi(k - 1) = total - phi_head.sum();
  res.base_value = base;
  res.fx = fx;
  return res;
}

}  // namespace macrocast::explain
