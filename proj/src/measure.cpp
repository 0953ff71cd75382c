#include "margdist/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace margdist {
namespace {

bool lex_less(const double* a, const double* b, int dim) {
  return std::lexicographical_compare(a, a + dim, b, b + dim);
}

bool lex_eq(const double* a, const double* b, int dim) {
  return std::equal(a, a + dim, b);
}

// Range-add segment tree tracking subtree min and max, used by the 2-D
// survival sweep. Leaves index the sorted distinct values of the second axis;
// leaf j holds the suffix sum over atoms (inserted so far) whose second
// coordinate rank is >= j.
class RangeAddMinMax {
 public:
  explicit RangeAddMinMax(std::size_t n) : n_(n), add_(4 * n, 0.0), mx_(4 * n, 0.0), mn_(4 * n, 0.0) {}

  // Add v to all leaves in [0, r].
  void add_prefix(std::size_t r, double v) { add(1, 0, n_ - 1, 0, r, v); }

  double max() const { return mx_[1] + add_[1]; }
  double min() const { return mn_[1] + add_[1]; }

 private:
  void add(std::size_t node, std::size_t lo, std::size_t hi, std::size_t l, std::size_t r, double v) {
    if (r < lo || hi < l) return;
    if (l <= lo && hi <= r) {
      add_[node] += v;
      return;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    add(2 * node, lo, mid, l, r, v);
    add(2 * node + 1, mid + 1, hi, l, r, v);
    mx_[node] = std::max(mx_[2 * node] + add_[2 * node], mx_[2 * node + 1] + add_[2 * node + 1]);
    mn_[node] = std::min(mn_[2 * node] + add_[2 * node], mn_[2 * node + 1] + add_[2 * node + 1]);
  }

  std::size_t n_;
  std::vector<double> add_, mx_, mn_;
};

struct SignedAtom {
  double x, y, w;
};

// Exact sup of |sum of signed weights over closed upper orthants| for K = 2:
// sweep candidate thresholds for the first axis in descending order, keeping
// per-rank suffix sums over the second axis in a segment tree. Identical atom
// sums to the generic grid enumeration, in O(n log n).
double survival_sup_2d(const DiscreteMeasure& p, const DiscreteMeasure& q) {
  std::vector<SignedAtom> atoms;
  atoms.reserve(p.size() + q.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto a = p.atom(i);
    atoms.push_back({a[0], a[1], p.weight(i)});
  }
  for (std::size_t i = 0; i < q.size(); ++i) {
    auto a = q.atom(i);
    atoms.push_back({a[0], a[1], -q.weight(i)});
  }
  std::vector<double> ys;
  ys.reserve(atoms.size());
  for (const auto& a : atoms) ys.push_back(a.y);
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  std::sort(atoms.begin(), atoms.end(), [](const SignedAtom& a, const SignedAtom& b) {
    return a.x > b.x;
  });

  RangeAddMinMax tree(ys.size());
  double best = 0.0;
  std::size_t i = 0;
  while (i < atoms.size()) {
    double x = atoms[i].x;
    for (; i < atoms.size() && atoms[i].x == x; ++i) {
      std::size_t rank = static_cast<std::size_t>(
          std::lower_bound(ys.begin(), ys.end(), atoms[i].y) - ys.begin());
      tree.add_prefix(rank, atoms[i].w);
    }
    best = std::max(best, std::max(tree.max(), -tree.min()));
  }
  return best;
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(int dim, std::vector<double> coords, std::vector<double> weights)
    : dim_(dim), coords_(std::move(coords)), weights_(std::move(weights)) {}

DiscreteMeasure DiscreteMeasure::make(const std::vector<std::vector<double>>& points,
                                      const std::vector<double>& weights) {
  if (points.empty()) fail(errc::invalid_argument, "measure requires at least one atom");
  if (points.size() != weights.size())
    fail(errc::invalid_argument, "atom and weight counts differ");
  const int dim = static_cast<int>(points[0].size());
  if (dim < 1) fail(errc::invalid_argument, "atoms must have dimension >= 1");
  for (const auto& pt : points) {
    if (static_cast<int>(pt.size()) != dim)
      fail(errc::dimension_mismatch, "atoms have inconsistent dimensions");
    for (double c : pt)
      if (!std::isfinite(c)) fail(errc::invalid_argument, "atom coordinates must be finite");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) fail(errc::invalid_argument, "weights must be nonnegative");
    sum += w;
  }
  if (std::fabs(sum - 1.0) > kUserWeightTol)
    fail(errc::invalid_argument, "weights must sum to 1 within 1e-9");

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lex_less(points[a].data(), points[b].data(), dim);
  });

  std::vector<double> coords;
  std::vector<double> ws;
  coords.reserve(points.size() * static_cast<std::size_t>(dim));
  ws.reserve(points.size());
  for (std::size_t idx : order) {
    const double* pt = points[idx].data();
    if (!ws.empty() && lex_eq(coords.data() + (ws.size() - 1) * dim, pt, dim)) {
      ws.back() += weights[idx];
    } else {
      coords.insert(coords.end(), pt, pt + dim);
      ws.push_back(weights[idx]);
    }
  }
  // Renormalize by the sum in canonical (sorted) order so that any two
  // presentations of the same law produce bitwise-identical storage. Skip the
  // division when that sum already meets the stored-weight invariant: this
  // makes construction idempotent, so re-feeding a measure's own atoms and
  // weights (a JSON round trip, for instance) reproduces it exactly. Atoms
  // that carried exactly zero mass are dropped.
  double canon_sum = 0.0;
  for (double w : ws) canon_sum += w;
  const bool renormalize = std::fabs(canon_sum - 1.0) > kWeightSumTol;
  std::vector<double> coords2;
  std::vector<double> ws2;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (ws[i] == 0.0) continue;
    const double* pt = coords.data() + i * dim;
    coords2.insert(coords2.end(), pt, pt + dim);
    ws2.push_back(renormalize ? ws[i] / canon_sum : ws[i]);
  }
  if (ws2.empty()) fail(errc::invalid_argument, "measure has no atoms with positive weight");
  return DiscreteMeasure(dim, std::move(coords2), std::move(ws2));
}

DiscreteMeasure DiscreteMeasure::uniform(const std::vector<std::vector<double>>& points) {
  if (points.empty()) fail(errc::invalid_argument, "measure requires at least one atom");
  return make(points, std::vector<double>(points.size(), 1.0 / static_cast<double>(points.size())));
}

DiscreteMeasure DiscreteMeasure::marginal(int k) const {
  if (k < 1 || k > dim_) fail(errc::invalid_argument, "marginal index out of range");
  std::vector<std::vector<double>> pts;
  pts.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) pts.push_back({atom(i)[k - 1]});
  return make(pts, weights_);
}

DiscreteMeasure DiscreteMeasure::product_of_marginals() const {
  std::vector<std::vector<double>> values(dim_);
  std::vector<std::vector<double>> probs(dim_);
  for (int k = 1; k <= dim_; ++k) {
    DiscreteMeasure m = marginal(k);
    for (std::size_t i = 0; i < m.size(); ++i) {
      values[k - 1].push_back(m.atom(i)[0]);
      probs[k - 1].push_back(m.weight(i));
    }
  }
  std::vector<std::vector<double>> pts;
  std::vector<double> ws;
  std::vector<std::size_t> idx(dim_, 0);
  for (;;) {
    std::vector<double> pt(dim_);
    double w = 1.0;
    for (int k = 0; k < dim_; ++k) {
      pt[k] = values[k][idx[k]];
      w *= probs[k][idx[k]];
    }
    pts.push_back(std::move(pt));
    ws.push_back(w);
    int k = dim_ - 1;
    while (k >= 0 && ++idx[k] == values[k].size()) idx[k--] = 0;
    if (k < 0) break;
  }
  return make(pts, ws);
}

double DiscreteMeasure::survival(std::span<const double> u) const {
  if (static_cast<int>(u.size()) != dim_)
    fail(errc::dimension_mismatch, "survival point dimension mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    auto a = atom(i);
    bool in = true;
    for (int k = 0; k < dim_; ++k) {
      if (a[k] < u[k]) {
        in = false;
        break;
      }
    }
    if (in) total += weights_[i];
  }
  return total;
}

std::vector<double> DiscreteMeasure::axis_values(int k) const {
  if (k < 1 || k > dim_) fail(errc::invalid_argument, "axis index out of range");
  std::vector<double> vals;
  vals.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) vals.push_back(atom(i)[k - 1]);
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

bool common_marginals_check(const DiscreteMeasure& p, const DiscreteMeasure& q, double tol) {
  if (p.dim() != q.dim()) fail(errc::dimension_mismatch, "dimension mismatch");
  for (int k = 1; k <= p.dim(); ++k) {
    if (!approx_equal(p.marginal(k), q.marginal(k), tol)) return false;
  }
  return true;
}

double survival_sup_distance(const DiscreteMeasure& p, const DiscreteMeasure& q) {
  if (p.dim() != q.dim()) fail(errc::dimension_mismatch, "dimension mismatch");
  const int dim = p.dim();
  if (dim == 2) return survival_sup_2d(p, q);

  std::vector<std::vector<double>> grid(dim);
  for (int k = 1; k <= dim; ++k) {
    std::vector<double> vals = p.axis_values(k);
    std::vector<double> vq = q.axis_values(k);
    vals.insert(vals.end(), vq.begin(), vq.end());
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    vals.insert(vals.begin(), vals.front() - 1.0);
    grid[k - 1] = std::move(vals);
  }
  std::vector<std::size_t> idx(dim, 0);
  std::vector<double> u(dim);
  double best = 0.0;
  for (;;) {
    for (int k = 0; k < dim; ++k) u[k] = grid[k][idx[k]];
    best = std::max(best, std::fabs(p.survival(u) - q.survival(u)));
    int k = dim - 1;
    while (k >= 0 && ++idx[k] == grid[k].size()) idx[k--] = 0;
    if (k < 0) break;
  }
  return best;
}

bool approx_equal(const DiscreteMeasure& p, const DiscreteMeasure& q, double tol) {
  if (p.dim() != q.dim() || p.size() != q.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto a = p.atom(i);
    auto b = q.atom(i);
    if (!std::equal(a.begin(), a.end(), b.begin())) return false;
    if (std::fabs(p.weight(i) - q.weight(i)) > tol) return false;
  }
  return true;
}

std::pair<DiscreteMeasure, DiscreteMeasure> random_common_marginal_pair(std::uint64_t seed,
                                                                        int dim, int n) {
  if (dim < 1) fail(errc::invalid_argument, "dimension must be >= 1");
  if (n < 1) fail(errc::invalid_argument, "support size must be >= 1");
  std::mt19937_64 rng(splitmix64(seed));
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  // Per-axis values keep a minimum gap of 1/max(7, n+1). A gap of delta forces
  // m1 <= (1 + 1/delta) * bl1: a ramp of width delta meets no atom mid-slope,
  // and its bounded-Lipschitz norm (sup plus slope) is 1 + 1/delta. At
  // delta = 1/7 that factor is 8, which closes the square-root bridge bound
  // exactly at its cap, so the bound holds for every generated pair with n <= 6.
  const double gap = 1.0 / std::max(7, n + 1);
  const double slack = 1.0 - gap * (n - 1);
  std::vector<std::vector<double>> values(dim);
  for (int k = 0; k < dim; ++k) {
    std::vector<double> jitter(n);
    for (double& j : jitter) j = unif(rng);
    std::sort(jitter.begin(), jitter.end());
    values[k].resize(n);
    for (int i = 0; i < n; ++i) values[k][i] = gap * i + slack * jitter[i];
    std::shuffle(values[k].begin(), values[k].end(), rng);
  }

  auto build = [&]() {
    std::vector<std::vector<std::size_t>> perm(dim);
    for (int k = 0; k < dim; ++k) {
      perm[k].resize(n);
      std::iota(perm[k].begin(), perm[k].end(), 0);
      if (k > 0) std::shuffle(perm[k].begin(), perm[k].end(), rng);
    }
    std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < dim; ++k) pts[i][k] = values[k][perm[k][i]];
    return DiscreteMeasure::uniform(pts);
  };
  DiscreteMeasure a = build();
  DiscreteMeasure b = build();
  return {std::move(a), std::move(b)};
}

namespace {

DiscreteMeasure project(const DiscreteMeasure& base, int from, int count) {
  std::vector<std::vector<double>> pts;
  pts.reserve(base.size());
  std::vector<double> ws(base.weights().begin(), base.weights().end());
  for (std::size_t i = 0; i < base.size(); ++i) {
    auto a = base.atom(i);
    pts.emplace_back(a.begin() + from, a.begin() + from + count);
  }
  return DiscreteMeasure::make(pts, ws);
}

}  // namespace

Coupling::Coupling(DiscreteMeasure base, DiscreteMeasure left, DiscreteMeasure right)
    : base_(std::move(base)), left_(std::move(left)), right_(std::move(right)) {
  if (left_.dim() != right_.dim())
    fail(errc::dimension_mismatch, "coupling sides must have equal dimension");
  const int k = left_.dim();
  if (base_.dim() != 2 * k)
    fail(errc::dimension_mismatch, "coupling base must have twice the side dimension");
  if (!approx_equal(project(base_, 0, k), left_, kWeightSumTol))
    fail(errc::precondition, "coupling base does not project onto the stated left law");
  if (!approx_equal(project(base_, k, k), right_, kWeightSumTol))
    fail(errc::precondition, "coupling base does not project onto the stated right law");
}

}  // namespace margdist
