#include "margdist/inequalities.hpp"

#include <algorithm>
#include <cmath>

#include "margdist/metrics.hpp"

namespace margdist {
namespace {

void require_nonneg_on_support(const MonotoneStep& g, const DiscreteMeasure& p1,
                               const char* what) {
  // g is nondecreasing, so nonnegativity at the smallest atom covers the
  // whole support.
  if (g(p1.atom(0)[0]) < 0.0) fail(errc::precondition, what);
}

// Thresholds hitting every constancy interval of the strict survival
// function: one probe below the smallest value and one between each pair of
// consecutive values. Midpoints that round up to the right endpoint are
// pulled back so each probe stays inside its interval.
std::vector<double> strict_survival_probes(const std::vector<double>& values) {
  std::vector<double> probes;
  probes.reserve(values.size());
  probes.push_back(values.front() - 1.0);
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    double mid = values[i] + (values[i + 1] - values[i]) / 2.0;
    if (mid >= values[i + 1]) mid = values[i];
    probes.push_back(mid);
  }
  return probes;
}

}  // namespace

DiscreteMeasure apply_monotone(const MonotoneStep& g, const DiscreteMeasure& p1) {
  if (p1.dim() != 1) fail(errc::dimension_mismatch, "monotone maps apply to 1-D laws");
  if (g.is_identity()) return p1;
  std::vector<std::vector<double>> pts;
  pts.reserve(p1.size());
  for (std::size_t i = 0; i < p1.size(); ++i) pts.push_back({g(p1.atom(i)[0])});
  return DiscreteMeasure::make(pts, std::vector<double>(p1.weights().begin(), p1.weights().end()));
}

StepQuantile quantile_g(const DiscreteMeasure& p1, const MonotoneStep& g) {
  if (p1.dim() != 1) fail(errc::dimension_mismatch, "quantiles apply to 1-D laws");
  require_nonneg_on_support(g, p1, "g takes a negative value on the support");
  DiscreteMeasure w = apply_monotone(g, p1);
  const std::size_t r = w.size();
  // Tail probabilities T_j = Pr(g(X) > y_j); Q equals y_j exactly on
  // [T_j, T_{j-1}), so the breakpoints are the tails read from the top.
  std::vector<double> tail(r, 0.0);
  for (std::size_t j = r; j-- > 1;) tail[j - 1] = tail[j] + w.weight(j);
  std::vector<double> bps{0.0};
  std::vector<double> vals{w.atom(r - 1)[0]};
  for (std::size_t j = r - 1; j-- > 0;) {
    double s = tail[j];
    if (s <= bps.back() || s >= 1.0) continue;  // zero-width cell, rounding only
    bps.push_back(s);
    vals.push_back(w.atom(j)[0]);
  }
  return StepQuantile::make(std::move(bps), std::move(vals));
}

double step_product_integral(const std::vector<StepQuantile>& qs, double theta) {
  if (qs.empty()) fail(errc::invalid_argument, "need at least one quantile");
  if (!(theta >= 0.0 && theta <= 1.0)) fail(errc::invalid_argument, "theta outside [0,1]");
  if (theta == 0.0) return 0.0;
  std::vector<double> cuts{0.0, theta};
  for (const auto& q : qs)
    for (double b : q.breakpoints())
      if (b > 0.0 && b < theta) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double prod = 1.0;
    for (const auto& q : qs) prod *= q(cuts[i]);
    total += (cuts[i + 1] - cuts[i]) * prod;
  }
  return total;
}

double corollary1_bound(const DiscreteMeasure& p, const DiscreteMeasure& q,
                        const std::vector<MonotoneStep>& gs) {
  if (static_cast<int>(gs.size()) != p.dim())
    fail(errc::dimension_mismatch, "one factor per coordinate required");
  const double theta = m1_distance(p, q) / 2.0;
  std::vector<StepQuantile> quantiles;
  quantiles.reserve(gs.size());
  for (int k = 1; k <= p.dim(); ++k)
    quantiles.push_back(quantile_g(p.marginal(k), gs[k - 1]));
  return 2.0 * step_product_integral(quantiles, theta);
}

double alpha_coefficient(const DiscreteMeasure& j) {
  if (j.dim() != 2) fail(errc::dimension_mismatch, "mixing coefficient applies to 2-D laws");
  std::vector<double> py = strict_survival_probes(j.axis_values(1));
  std::vector<double> pz = strict_survival_probes(j.axis_values(2));
  double worst = 0.0;
  for (double y : py) {
    for (double z : pz) {
      double joint = 0.0, my = 0.0, mz = 0.0;
      for (std::size_t i = 0; i < j.size(); ++i) {
        auto a = j.atom(i);
        const double w = j.weight(i);
        if (a[0] > y) my += w;
        if (a[1] > z) mz += w;
        if (a[0] > y && a[1] > z) joint += w;
      }
      worst = std::max(worst, std::fabs(joint - my * mz));
    }
  }
  return 2.0 * worst;
}

double rio_bound(const DiscreteMeasure& j, const MonotoneStep& g_y, const MonotoneStep& g_z) {
  if (j.dim() != 2) fail(errc::dimension_mismatch, "covariance bounds apply to 2-D laws");
  const double alpha = alpha_coefficient(j);
  std::vector<StepQuantile> qs{quantile_g(j.marginal(1), g_y), quantile_g(j.marginal(2), g_z)};
  return 2.0 * step_product_integral(qs, alpha);
}

double corollary2_bound(const DiscreteMeasure& j, const MonotoneStep& g_y,
                        const MonotoneStep& g_z, double d_bl) {
  if (j.dim() != 2) fail(errc::dimension_mismatch, "covariance bounds apply to 2-D laws");
  if (d_bl < 0.0) fail(errc::invalid_argument, "distance argument must be nonnegative");
  const double theta = 2.0 * std::min(std::sqrt(8.0 * d_bl), 1.0);
  std::vector<StepQuantile> qs{quantile_g(j.marginal(1), g_y), quantile_g(j.marginal(2), g_z)};
  return 2.0 * step_product_integral(qs, std::min(theta, 1.0));
}

double covariance(const DiscreteMeasure& j, const MonotoneStep& g_y, const MonotoneStep& g_z) {
  if (j.dim() != 2) fail(errc::dimension_mismatch, "covariance applies to 2-D laws");
  double eyz = 0.0, ey = 0.0, ez = 0.0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto a = j.atom(i);
    const double w = j.weight(i);
    const double y = g_y(a[0]);
    const double z = g_z(a[1]);
    eyz += w * y * z;
    ey += w * y;
    ez += w * z;
  }
  return eyz - ey * ez;
}

}  // namespace margdist
