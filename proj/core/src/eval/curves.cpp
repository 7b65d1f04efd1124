#include "macrocast/eval/curves.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "macrocast/errors.hpp"
#include "macrocast/io/csv.hpp"

namespace macrocast::eval {

namespace {

struct SweepCounts {
  // one entry per unique probability, descending; cumulative tp/fp after
  // calling everything at or above that probability
  std::vector<double> thresholds;
  std::vector<long> cum_tp, cum_fp;
  long pos = 0, neg = 0;
};

SweepCounts sweep(const Eigen::VectorXd& probs, const Eigen::VectorXd& targets) {
  if (probs.size() != targets.size() || probs.size() == 0)
    throw StructuralError("curve: size mismatch or empty input");
  std::vector<int> order(static_cast<std::size_t>(probs.size()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return probs(a) > probs(b); });

  SweepCounts out;
  for (Eigen::Index i = 0; i < targets.size(); ++i)
    (targets(i) >= 0.5 ? out.pos : out.neg) += 1;
  if (out.pos == 0 || out.neg == 0)
    throw NumericError("curve undefined: targets contain a single class");

  long tp = 0, fp = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double p = probs(order[i]);
    while (i < order.size() && probs(order[i]) == p) {
      (targets(order[i]) >= 0.5 ? tp : fp) += 1;
      ++i;
    }
    out.thresholds.push_back(p);
    out.cum_tp.push_back(tp);
    out.cum_fp.push_back(fp);
  }
  return out;
}

double trapezoid(const std::vector<CurvePoint>& pts) {
  double area = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    area += (pts[i].x - pts[i - 1].x) * 0.5 * (pts[i].y + pts[i - 1].y);
  return area;
}

}  // namespace

Curve roc_curve(const Eigen::VectorXd& probs, const Eigen::VectorXd& targets) {
  auto s = sweep(probs, targets);
  Curve c;
  c.points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
  for (std::size_t i = 0; i < s.thresholds.size(); ++i)
    c.points.push_back({static_cast<double>(s.cum_fp[i]) / static_cast<double>(s.neg),
                        static_cast<double>(s.cum_tp[i]) / static_cast<double>(s.pos),
                        s.thresholds[i]});
  c.area = trapezoid(c.points);
  return c;
}

Curve pr_curve(const Eigen::VectorXd& probs, const Eigen::VectorXd& targets) {
  auto s = sweep(probs, targets);
  Curve c;
  std::vector<CurvePoint> pts;
  for (std::size_t i = 0; i < s.thresholds.size(); ++i) {
    long called = s.cum_tp[i] + s.cum_fp[i];
    pts.push_back({static_cast<double>(s.cum_tp[i]) / static_cast<double>(s.pos),
                   static_cast<double>(s.cum_tp[i]) / static_cast<double>(called),
                   s.thresholds[i]});
  }
  // anchor recall 0 at the precision of the strictest cutoff
  c.points.push_back({0.0, pts.front().y, std::numeric_limits<double>::infinity()});
  for (const auto& p : pts) c.points.push_back(p);
  c.area = trapezoid(c.points);
  return c;
}

double auroc(const Eigen::VectorXd& probs, const Eigen::VectorXd& targets) {
  return roc_curve(probs, targets).area;
}

double auprc(const Eigen::VectorXd& probs, const Eigen::VectorXd& targets) {
  return pr_curve(probs, targets).area;
}

void write_curve_csv(const Curve& curve, const std::string& path) {
  std::ostringstream out;
  out << "x,y,threshold\n";
  for (const auto& p : curve.points)
    out << io::format_double(p.x) << ',' << io::format_double(p.y) << ','
        << io::format_double(p.threshold) << '\n';
  io::write_text_file(path, out.str());
}

}  // namespace macrocast::eval
