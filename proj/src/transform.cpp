#include "margdist/transform.hpp"

#include <algorithm>
#include <cmath>

namespace margdist {
namespace {

// Sorted distinct values of a 1-D law together with cumulative probabilities;
// the final cumulative value is pinned to exactly 1 so CDF grids close.
struct AxisCdf {
  std::vector<double> values;
  std::vector<double> cum;  // cum[i] = F(values[i]); cum.back() == 1.0
};

AxisCdf axis_cdf(const DiscreteMeasure& p, int k) {
  DiscreteMeasure m = p.marginal(k);
  AxisCdf out;
  out.values.reserve(m.size());
  out.cum.reserve(m.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    out.values.push_back(m.atom(i)[0]);
    acc += m.weight(i);
    out.cum.push_back(acc);
  }
  out.cum.back() = 1.0;
  return out;
}

double overlap_below(const RectMixture::Component& comp, int k, double t) {
  // Length fraction of [lower_k, upper_k] lying in [0, t].
  double lo = comp.lower[k];
  double hi = comp.upper[k];
  return std::max(0.0, std::min(t, hi) - lo) / (hi - lo);
}

double overlap_above(const RectMixture::Component& comp, int k, double t) {
  double lo = comp.lower[k];
  double hi = comp.upper[k];
  return std::max(0.0, hi - std::max(t, lo)) / (hi - lo);
}

void check_unit_cube_point(const RectMixture& c, std::span<const double> u) {
  if (static_cast<int>(u.size()) != c.dim())
    fail(errc::dimension_mismatch, "evaluation point dimension mismatch");
  for (double x : u)
    if (!(x >= 0.0 && x <= 1.0))
      fail(errc::invalid_argument, "evaluation point outside the unit cube");
}

}  // namespace

RectMixture RectMixture::make(int dim, std::vector<Component> components) {
  if (dim < 1) fail(errc::invalid_argument, "mixture dimension must be >= 1");
  if (components.empty()) fail(errc::invalid_argument, "mixture requires at least one component");
  double sum = 0.0;
  for (const auto& comp : components) {
    if (static_cast<int>(comp.lower.size()) != dim || static_cast<int>(comp.upper.size()) != dim)
      fail(errc::dimension_mismatch, "component interval dimensions mismatch");
    for (int k = 0; k < dim; ++k) {
      if (!(comp.lower[k] >= 0.0 && comp.lower[k] < comp.upper[k] && comp.upper[k] <= 1.0))
        fail(errc::invalid_argument, "component intervals must satisfy 0 <= lower < upper <= 1");
    }
    if (!std::isfinite(comp.weight) || comp.weight < 0.0)
      fail(errc::invalid_argument, "component weights must be nonnegative");
    sum += comp.weight;
  }
  if (std::fabs(sum - 1.0) > kWeightSumTol)
    fail(errc::invalid_argument, "component weights must sum to 1 within 1e-12");
  RectMixture c;
  c.dim_ = dim;
  c.components_ = std::move(components);
  return c;
}

double dtransform(const DiscreteMeasure& p1, double x, double v) {
  if (p1.dim() != 1) fail(errc::dimension_mismatch, "dtransform requires a 1-D law");
  if (!(v >= 0.0 && v <= 1.0)) fail(errc::invalid_argument, "randomizer v outside [0,1]");
  double below = 0.0;
  double at = 0.0;
  for (std::size_t i = 0; i < p1.size(); ++i) {
    double a = p1.atom(i)[0];
    if (a < x) below += p1.weight(i);
    else if (a == x) at = p1.weight(i);
  }
  return below + v * at;
}

double pseudo_inverse(const DiscreteMeasure& p1, double u) {
  if (p1.dim() != 1) fail(errc::dimension_mismatch, "pseudo_inverse requires a 1-D law");
  if (!(u > 0.0 && u <= 1.0)) fail(errc::invalid_argument, "quantile level outside (0,1]");
  double acc = 0.0;
  for (std::size_t i = 0; i < p1.size(); ++i) {
    acc += p1.weight(i);
    if (acc >= u) return p1.atom(i)[0];
  }
  // The cumulative sum reaches 1 only up to rounding; the last atom is the
  // quantile for every u that slips past it.
  return p1.atom(p1.size() - 1)[0];
}

RectMixture to_copula(const DiscreteMeasure& p) {
  const int dim = p.dim();
  std::vector<AxisCdf> axes;
  axes.reserve(dim);
  for (int k = 1; k <= dim; ++k) axes.push_back(axis_cdf(p, k));

  std::vector<RectMixture::Component> comps;
  comps.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto a = p.atom(i);
    RectMixture::Component comp;
    comp.lower.resize(dim);
    comp.upper.resize(dim);
    comp.weight = p.weight(i);
    for (int k = 0; k < dim; ++k) {
      const AxisCdf& ax = axes[k];
      std::size_t j = static_cast<std::size_t>(
          std::lower_bound(ax.values.begin(), ax.values.end(), a[k]) - ax.values.begin());
      comp.lower[k] = j == 0 ? 0.0 : ax.cum[j - 1];
      comp.upper[k] = ax.cum[j];
    }
    comps.push_back(std::move(comp));
  }
  return RectMixture::make(dim, std::move(comps));
}

double copula_cdf(const RectMixture& c, std::span<const double> u) {
  check_unit_cube_point(c, u);
  double total = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& comp = c.component(i);
    double mass = comp.weight;
    for (int k = 0; k < c.dim() && mass != 0.0; ++k) mass *= overlap_below(comp, k, u[k]);
    total += mass;
  }
  return total;
}

double survival_copula(const RectMixture& c, std::span<const double> u) {
  check_unit_cube_point(c, u);
  double total = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& comp = c.component(i);
    double mass = comp.weight;
    for (int k = 0; k < c.dim() && mass != 0.0; ++k) mass *= overlap_above(comp, k, u[k]);
    total += mass;
  }
  return total;
}

double copula_sup_distance(const RectMixture& c, const RectMixture& d) {
  if (c.dim() != d.dim()) fail(errc::dimension_mismatch, "dimension mismatch");
  const int dim = c.dim();
  std::vector<std::vector<double>> grid(dim);
  for (int k = 0; k < dim; ++k) {
    std::vector<double>& g = grid[k];
    g.push_back(0.0);
    g.push_back(1.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      g.push_back(c.component(i).lower[k]);
      g.push_back(c.component(i).upper[k]);
    }
    for (std::size_t i = 0; i < d.size(); ++i) {
      g.push_back(d.component(i).lower[k]);
      g.push_back(d.component(i).upper[k]);
    }
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
  }
  std::vector<std::size_t> idx(dim, 0);
  std::vector<double> u(dim);
  double best = 0.0;
  for (;;) {
    for (int k = 0; k < dim; ++k) u[k] = grid[k][idx[k]];
    best = std::max(best, std::fabs(survival_copula(c, u) - survival_copula(d, u)));
    int k = dim - 1;
    while (k >= 0 && ++idx[k] == grid[k].size()) idx[k--] = 0;
    if (k < 0) break;
  }
  return best;
}

std::vector<double> quantile_map(std::span<const double> u,
                                 const std::vector<DiscreteMeasure>& marginals) {
  if (u.size() != marginals.size())
    fail(errc::dimension_mismatch, "quantile point and marginal counts differ");
  std::vector<double> x(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) x[k] = pseudo_inverse(marginals[k], u[k]);
  return x;
}

DiscreteMeasure push_back(const RectMixture& c, const std::vector<DiscreteMeasure>& marginals) {
  const int dim = c.dim();
  if (static_cast<int>(marginals.size()) != dim)
    fail(errc::dimension_mismatch, "marginal count does not match mixture dimension");
  std::vector<AxisCdf> axes;
  axes.reserve(dim);
  for (int k = 0; k < dim; ++k) {
    if (marginals[k].dim() != 1) fail(errc::dimension_mismatch, "marginals must be 1-D laws");
    axes.push_back(axis_cdf(marginals[k], 1));
  }
  // grid[k][0] = 0, grid[k][j] = F_k(values[j-1]); cell j covers
  // (grid[j-1], grid[j]] and maps to value index j-1 of axis k.
  std::vector<std::vector<double>> grid(dim);
  for (int k = 0; k < dim; ++k) {
    grid[k].push_back(0.0);
    grid[k].insert(grid[k].end(), axes[k].cum.begin(), axes[k].cum.end());
  }
  auto locate = [&](int k, double e) -> std::size_t {
    const std::vector<double>& g = grid[k];
    std::size_t best = 0;
    double bestd = std::fabs(g[0] - e);
    for (std::size_t j = 1; j < g.size(); ++j) {
      double dj = std::fabs(g[j] - e);
      if (dj < bestd) {
        bestd = dj;
        best = j;
      }
    }
    if (bestd > kWeightSumTol)
      fail(errc::precondition, "component endpoint off the marginal CDF grid beyond tolerance");
    return best;
  };

  std::vector<std::vector<double>> pts;
  std::vector<double> ws;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& comp = c.component(i);
    // Per axis: the grid cells covered by [lower, upper] and their fractions.
    std::vector<std::vector<std::size_t>> cell_value(dim);
    std::vector<std::vector<double>> cell_frac(dim);
    for (int k = 0; k < dim; ++k) {
      std::size_t jlo = locate(k, comp.lower[k]);
      std::size_t jhi = locate(k, comp.upper[k]);
      if (jlo >= jhi)
        fail(errc::precondition, "component interval collapses on the marginal CDF grid");
      double len = grid[k][jhi] - grid[k][jlo];
      for (std::size_t j = jlo + 1; j <= jhi; ++j) {
        cell_value[k].push_back(j - 1);
        cell_frac[k].push_back((grid[k][j] - grid[k][j - 1]) / len);
      }
    }
    std::vector<std::size_t> idx(dim, 0);
    for (;;) {
      std::vector<double> pt(dim);
      double w = comp.weight;
      for (int k = 0; k < dim; ++k) {
        pt[k] = axes[k].values[cell_value[k][idx[k]]];
        w *= cell_frac[k][idx[k]];
      }
      pts.push_back(std::move(pt));
      ws.push_back(w);
      int k = dim - 1;
      while (k >= 0 && ++idx[k] == cell_value[k].size()) idx[k--] = 0;
      if (k < 0) break;
    }
  }
  return DiscreteMeasure::make(pts, ws);
}

double max_uniform_marginal_error(const RectMixture& c, int grid_points) {
  if (grid_points < 2) fail(errc::invalid_argument, "need at least two grid points");
  double worst = 0.0;
  for (int k = 0; k < c.dim(); ++k) {
    for (int g = 0; g < grid_points; ++g) {
      double t = static_cast<double>(g) / static_cast<double>(grid_points - 1);
      double mass = 0.0;
      for (std::size_t i = 0; i < c.size(); ++i) mass += c.component(i).weight * overlap_below(c.component(i), k, t);
      worst = std::max(worst, std::fabs(mass - t));
    }
  }
  return worst;
}

}  // namespace margdist
