#include "macrocast/explain/importance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "macrocast/dataset/supervised.hpp"
#include "macrocast/errors.hpp"
#include "macrocast/io/csv.hpp"

namespace macrocast::explain {

std::vector<FeatureImportance> aggregate_importance(const Eigen::MatrixXd& attributions,
                                                    const std::vector<std::string>& features) {
  const int T = dataset::kSequenceLength;
  const Eigen::Index f = static_cast<Eigen::Index>(features.size());
  if (attributions.cols() != f * T)
    throw StructuralError("aggregate_importance: column count must be features x 12");
  if (attributions.rows() == 0)
    throw StructuralError("aggregate_importance: no instances");

  std::vector<FeatureImportance> out(features.size());
  for (Eigen::Index j = 0; j < f; ++j) {
    double acc = 0.0;
    for (int t = 0; t < T; ++t) acc += attributions.col(j * T + t).cwiseAbs().mean();
    out[static_cast<std::size_t>(j)].feature = features[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(j)].importance = acc / static_cast<double>(T);
  }
  std::vector<std::size_t> order(out.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return out[a].importance > out[b].importance;
  });
  std::vector<FeatureImportance> ranked;
  ranked.reserve(out.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    FeatureImportance fi = out[order[i]];
    fi.rank = static_cast<int>(i) + 1;
    ranked.push_back(std::move(fi));
  }
  return ranked;
}

namespace {
Eigen::VectorXd average_ranks(const Eigen::VectorXd& v) {
  const Eigen::Index n = v.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return v(a) < v(b); });
  Eigen::VectorXd ranks(n);
  Eigen::Index i = 0;
  while (i < n) {
    Eigen::Index j = i;
    while (j + 1 < n && v(order[static_cast<std::size_t>(j + 1)]) ==
                            v(order[static_cast<std::size_t>(i)]))
      ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // 1-based average rank
    for (Eigen::Index t = i; t <= j; ++t) ranks(order[static_cast<std::size_t>(t)]) = avg;
    i = j + 1;
  }
  return ranks;
}
}  // namespace

double spearman(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw StructuralError("spearman: need two equal-length vectors of size >= 2");
  Eigen::VectorXd ra = average_ranks(a), rb = average_ranks(b);
  const double ma = ra.mean(), mb = rb.mean();
  Eigen::VectorXd da = ra.array() - ma, db = rb.array() - mb;
  const double denom = std::sqrt(da.squaredNorm() * db.squaredNorm());
  if (!(denom > 0.0))
    throw NumericError("spearman: undefined for a constant input");
  return da.dot(db) / denom;
}

std::vector<DependencePoint> dependence_data(const Eigen::MatrixXd& attributions,
                                             const Eigen::MatrixXd& inputs,
                                             Eigen::Index flat_index) {
  if (attributions.rows() != inputs.rows() || attributions.cols() != inputs.cols())
    throw StructuralError("dependence_data: attribution/input shape mismatch");
  if (flat_index < 0 || flat_index >= inputs.cols())
    throw StructuralError("dependence_data: flat index out of range");
  std::vector<DependencePoint> pts;
  pts.reserve(static_cast<std::size_t>(inputs.rows()));
  for (Eigen::Index i = 0; i < inputs.rows(); ++i)
    pts.push_back({inputs(i, flat_index), attributions(i, flat_index)});
  std::sort(pts.begin(), pts.end(), [](const DependencePoint& a, const DependencePoint& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.attribution < b.attribution;
  });
  return pts;
}

void write_importance_csv(const std::vector<FeatureImportance>& ranking,
                          const std::string& path) {
  std::ostringstream out;
  out << "feature,importance,rank\n";
  for (const auto& r : ranking)
    out << r.feature << ',' << io::format_double(r.importance) << ',' << r.rank << '\n';
  io::write_text_file(path, out.str());
}

}  // namespace macrocast::explain
