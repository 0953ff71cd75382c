#include "margdist/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "margdist/lp.hpp"

namespace margdist {
namespace {

constexpr double kCertTol = 1e-9;

// Union support of two laws with the signed weight difference p - q.
struct UnionSupport {
  std::vector<std::vector<double>> points;
  std::vector<double> diff;
};

UnionSupport union_support(const DiscreteMeasure& p, const DiscreteMeasure& q) {
  std::map<std::vector<double>, double> acc;
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto a = p.atom(i);
    acc[std::vector<double>(a.begin(), a.end())] += p.weight(i);
  }
  for (std::size_t i = 0; i < q.size(); ++i) {
    auto a = q.atom(i);
    acc[std::vector<double>(a.begin(), a.end())] -= q.weight(i);
  }
  UnionSupport out;
  out.points.reserve(acc.size());
  out.diff.reserve(acc.size());
  for (auto& [pt, d] : acc) {
    out.points.push_back(pt);
    out.diff.push_back(d);
  }
  return out;
}

}  // namespace

MetricChoice::MetricChoice(double p_in) : p(p_in) {
  if (std::isnan(p) || p < 1.0) fail(errc::invalid_argument, "metric order p must be >= 1");
}

MetricChoice MetricChoice::linf() {
  return MetricChoice(std::numeric_limits<double>::infinity());
}

double MetricChoice::operator()(std::span<const double> a, std::span<const double> b) const {
  if (a.size() != b.size()) fail(errc::dimension_mismatch, "ground distance dimension mismatch");
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::fabs(a[k] - b[k]));
    return m;
  }
  if (p == 1.0) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += std::fabs(a[k] - b[k]);
    return s;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return std::sqrt(s);
  }
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::pow(std::fabs(a[k] - b[k]), p);
  return std::pow(s, 1.0 / p);
}

double m1_distance(const DiscreteMeasure& p, const DiscreteMeasure& q) {
  if (!common_marginals_check(p, q, kCertTol))
    fail(errc::precondition, "monotone-class distance requires common marginals");
  return survival_sup_distance(p, q);
}

BLReport bl1_distance(const DiscreteMeasure& p, const DiscreteMeasure& q, const MetricChoice& m) {
  if (p.dim() != q.dim()) fail(errc::dimension_mismatch, "dimension mismatch");
  UnionSupport sup = union_support(p, q);
  const int s = static_cast<int>(sup.points.size());

  // Variables: f_0..f_{s-1} (free), then c0 (sup bound) and c1 (Lipschitz
  // bound), both nonnegative. Maximize sum f_i (p_i - q_i) subject to
  // |f_i| <= c0, f_i - f_j <= c1 r(x_i, x_j), c0 + c1 <= 1.
  lp::LinearProgram prog(s + 2);
  const int c0 = s;
  const int c1 = s + 1;
  for (int i = 0; i < s; ++i) prog.objective[i] = sup.diff[i];
  prog.lower[c0] = 0.0;
  prog.lower[c1] = 0.0;
  for (int i = 0; i < s; ++i) {
    std::vector<double> row(s + 2, 0.0);
    row[i] = 1.0;
    row[c0] = -1.0;
    prog.add_row(row, 0.0);
    row[i] = -1.0;
    prog.add_row(std::move(row), 0.0);
  }
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      if (i == j) continue;
      std::vector<double> row(s + 2, 0.0);
      row[i] = 1.0;
      row[j] = -1.0;
      row[c1] = -m(sup.points[i], sup.points[j]);
      prog.add_row(std::move(row), 0.0);
    }
  }
  {
    std::vector<double> row(s + 2, 0.0);
    row[c0] = 1.0;
    row[c1] = 1.0;
    prog.add_row(std::move(row), 1.0);
  }

  lp::Solution sol = lp::solve(prog);
  if (sol.status != lp::Status::optimal)
    fail(errc::lp_failure, "bounded-Lipschitz program did not reach an optimum");

  BLReport report;
  report.support = std::move(sup.points);
  report.witness_values.assign(sol.x.begin(), sol.x.begin() + s);
  report.sup_part = std::max(0.0, sol.x[c0]);
  report.lip_part = std::max(0.0, sol.x[c1]);
  report.value = std::max(0.0, sol.value);
  validate_bl_report(p, q, m, report);
  return report;
}

double bl1_coupling_bound(const Coupling& c, const MetricChoice& m) {
  const int k = c.pair_dim();
  double total = 0.0;
  for (std::size_t i = 0; i < c.base().size(); ++i) {
    auto a = c.base().atom(i);
    total += c.base().weight(i) * m(a.subspan(0, k), a.subspan(k, k));
  }
  return total;
}

double theorem2_bound(double d_bl, int dim, const MetricChoice& m) {
  if (d_bl < 0.0) fail(errc::invalid_argument, "distance argument must be nonnegative");
  if (dim < 1) fail(errc::invalid_argument, "dimension must be >= 1");
  const double expo = std::isinf(m.p) ? 0.5 : (m.p - 1.0) / (2.0 * m.p);
  const double bound = 2.0 * std::sqrt(2.0) * std::pow(static_cast<double>(dim), expo) *
                       std::sqrt(d_bl);
  return std::min(bound, 1.0);
}

MonotoneTestFn MonotoneTestFn::orthant(std::vector<double> corner) {
  if (corner.empty()) fail(errc::invalid_argument, "orthant corner must be nonempty");
  MonotoneTestFn f;
  f.factors_.reserve(corner.size());
  for (double a : corner) f.factors_.push_back(MonotoneStep::make({a}, {0.0, 1.0}));
  return f;
}

MonotoneTestFn MonotoneTestFn::product(std::vector<MonotoneStep> factors) {
  if (factors.empty()) fail(errc::invalid_argument, "product needs at least one factor");
  MonotoneTestFn f;
  f.factors_ = std::move(factors);
  return f;
}

double MonotoneTestFn::operator()(std::span<const double> x) const {
  if (x.size() != factors_.size())
    fail(errc::dimension_mismatch, "test function dimension mismatch");
  double v = 1.0;
  for (std::size_t k = 0; k < factors_.size(); ++k) v *= factors_[k](x[k]);
  return v;
}

double monotone_lb(const DiscreteMeasure& p, const DiscreteMeasure& q,
                   const std::vector<MonotoneTestFn>& fs) {
  if (p.dim() != q.dim()) fail(errc::dimension_mismatch, "dimension mismatch");
  UnionSupport sup = union_support(p, q);
  const std::size_t s = sup.points.size();
  double best = 0.0;
  for (const auto& f : fs) {
    if (f.dim() != p.dim()) fail(errc::dimension_mismatch, "test function dimension mismatch");
    std::vector<double> vals(s);
    for (std::size_t i = 0; i < s; ++i) {
      vals[i] = f(sup.points[i]);
      if (!(vals[i] >= -1e-12 && vals[i] <= 1.0 + 1e-12))
        fail(errc::precondition, "test function leaves [0,1] on the support");
    }
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < s; ++j) {
        bool leq = true;
        for (int k = 0; k < p.dim(); ++k) {
          if (sup.points[i][k] > sup.points[j][k]) {
            leq = false;
            break;
          }
        }
        if (leq && vals[i] > vals[j] + 1e-12)
          fail(errc::precondition, "test function violates monotonicity on the support");
      }
    }
    double integral = 0.0;
    for (std::size_t i = 0; i < s; ++i) integral += vals[i] * sup.diff[i];
    best = std::max(best, std::fabs(integral));
  }
  return best;
}

void validate_bl_report(const DiscreteMeasure& p, const DiscreteMeasure& q,
                        const MetricChoice& m, const BLReport& report) {
  UnionSupport sup = union_support(p, q);
  const std::size_t s = sup.points.size();
  if (report.support.size() != s || report.witness_values.size() != s)
    fail(errc::lp_failure, "witness support does not match the union support");
  if (report.sup_part < -kCertTol || report.lip_part < -kCertTol ||
      report.sup_part + report.lip_part > 1.0 + kCertTol)
    fail(errc::lp_failure, "witness norm split violates the unit budget");
  double integral = 0.0;
  for (std::size_t i = 0; i < s; ++i) {
    if (sup.points[i] != report.support[i])
      fail(errc::lp_failure, "witness support does not match the union support");
    double f = report.witness_values[i];
    if (std::fabs(f) > report.sup_part + kCertTol)
      fail(errc::lp_failure, "witness exceeds its sup bound");
    integral += f * sup.diff[i];
  }
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      if (i == j) continue;
      double gap = report.witness_values[i] - report.witness_values[j];
      if (gap > report.lip_part * m(sup.points[i], sup.points[j]) + kCertTol)
        fail(errc::lp_failure, "witness exceeds its Lipschitz bound");
    }
  }
  if (std::fabs(integral - report.value) > kCertTol)
    fail(errc::lp_failure, "witness does not attain the reported value");
}

}  // namespace margdist
