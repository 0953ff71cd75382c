#pragma once

// Shared fixtures and independent oracles for the unit and acceptance tests.
// Oracles here are deliberately naive (full enumeration, direct summation) so
// they share no code path with the library routines they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "margdist/measure.hpp"

namespace mdtest {

using margdist::DiscreteMeasure;

// Comonotone Bernoulli(1/2) pair law: uniform on {(0,0),(1,1)}.
inline DiscreteMeasure p_co() {
  return DiscreteMeasure::uniform({{0.0, 0.0}, {1.0, 1.0}});
}

// Independence law with the same marginals: uniform on {0,1}^2.
inline DiscreteMeasure p_ind() {
  return DiscreteMeasure::uniform({{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}});
}

// Anti-comonotone pair law: uniform on {(0,1),(1,0)}.
inline DiscreteMeasure p_anti() {
  return DiscreteMeasure::uniform({{0.0, 1.0}, {1.0, 0.0}});
}

// Two-atom pair with per-axis x-values 0.001035 apart and the y-pairing
// swapped between the measures. The monotone-class distance is 1/2 while the
// bounded-Lipschitz distance is of the order of the x-gap, so the square-root
// bridge bound fails here; kept as the negative certificate showing that the
// bound needs separated atom values.
inline std::pair<DiscreteMeasure, DiscreteMeasure> close_atom_swap_pair() {
  const double x0 = 0.80447811822179438;
  const double x1 = 0.80551369285791974;
  const double y0 = 0.23307263390429406;
  const double y1 = 0.40650346286353178;
  DiscreteMeasure p = DiscreteMeasure::uniform({{x0, y0}, {x1, y1}});
  DiscreteMeasure q = DiscreteMeasure::uniform({{x0, y1}, {x1, y0}});
  return {p, q};
}

// Mass of the open upper orthant {x : x_k > u_k for all k}.
inline double strict_survival(const DiscreteMeasure& m, std::span<const double> u) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto a = m.atom(i);
    bool in = true;
    for (int k = 0; k < m.dim(); ++k)
      if (!(a[static_cast<std::size_t>(k)] > u[static_cast<std::size_t>(k)])) in = false;
    if (in) s += m.weight(i);
  }
  return s;
}

// sup_u |P([u,inf)) - Q([u,inf))| by full enumeration of the candidate grid
// (per-axis union of atom values plus one probe below the minimum).
inline double brute_survival_sup(const DiscreteMeasure& p, const DiscreteMeasure& q) {
  const int dim = p.dim();
  std::vector<std::vector<double>> grid(static_cast<std::size_t>(dim));
  for (int k = 1; k <= dim; ++k) {
    std::vector<double> vals = p.axis_values(k);
    const std::vector<double> qv = q.axis_values(k);
    vals.insert(vals.end(), qv.begin(), qv.end());
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    vals.insert(vals.begin(), vals.front() - 1.0);
    grid[static_cast<std::size_t>(k - 1)] = std::move(vals);
  }
  std::vector<std::size_t> idx(static_cast<std::size_t>(dim), 0);
  std::vector<double> u(static_cast<std::size_t>(dim));
  double best = 0.0;
  for (;;) {
    for (int k = 0; k < dim; ++k)
      u[static_cast<std::size_t>(k)] = grid[static_cast<std::size_t>(k)][idx[static_cast<std::size_t>(k)]];
    best = std::max(best, std::fabs(p.survival(u) - q.survival(u)));
    int k = dim - 1;
    while (k >= 0) {
      if (++idx[static_cast<std::size_t>(k)] < grid[static_cast<std::size_t>(k)].size()) break;
      idx[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return best;
}

// Same sup taken over open orthants, probed at the same grid.
inline double brute_strict_survival_sup(const DiscreteMeasure& p, const DiscreteMeasure& q) {
  const int dim = p.dim();
  std::vector<std::vector<double>> grid(static_cast<std::size_t>(dim));
  for (int k = 1; k <= dim; ++k) {
    std::vector<double> vals = p.axis_values(k);
    const std::vector<double> qv = q.axis_values(k);
    vals.insert(vals.end(), qv.begin(), qv.end());
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    vals.insert(vals.begin(), vals.front() - 1.0);
    grid[static_cast<std::size_t>(k - 1)] = std::move(vals);
  }
  std::vector<std::size_t> idx(static_cast<std::size_t>(dim), 0);
  std::vector<double> u(static_cast<std::size_t>(dim));
  double best = 0.0;
  for (;;) {
    for (int k = 0; k < dim; ++k)
      u[static_cast<std::size_t>(k)] = grid[static_cast<std::size_t>(k)][idx[static_cast<std::size_t>(k)]];
    best = std::max(best, std::fabs(strict_survival(p, u) - strict_survival(q, u)));
    int k = dim - 1;
    while (k >= 0) {
      if (++idx[static_cast<std::size_t>(k)] < grid[static_cast<std::size_t>(k)].size()) break;
      idx[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return best;
}

// Product coupling of p and q: atoms (x_i, y_j) with weight w_i * v_j.
inline margdist::Coupling independent_coupling(const DiscreteMeasure& p,
                                               const DiscreteMeasure& q) {
  std::vector<std::vector<double>> pts;
  std::vector<double> ws;
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto a = p.atom(i);
    for (std::size_t j = 0; j < q.size(); ++j) {
      auto b = q.atom(j);
      std::vector<double> pt(a.begin(), a.end());
      pt.insert(pt.end(), b.begin(), b.end());
      pts.push_back(std::move(pt));
      ws.push_back(p.weight(i) * q.weight(j));
    }
  }
  return margdist::Coupling(DiscreteMeasure::make(pts, ws), p, q);
}

// Diagonal coupling of p with itself: atoms (x_i, x_i) with weight w_i.
inline margdist::Coupling diagonal_coupling(const DiscreteMeasure& p) {
  std::vector<std::vector<double>> pts;
  std::vector<double> ws;
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto a = p.atom(i);
    std::vector<double> pt(a.begin(), a.end());
    pt.insert(pt.end(), a.begin(), a.end());
    pts.push_back(std::move(pt));
    ws.push_back(p.weight(i));
  }
  return margdist::Coupling(DiscreteMeasure::make(pts, ws), p, p);
}

}  // namespace mdtest
