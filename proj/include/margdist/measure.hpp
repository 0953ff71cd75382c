#pragma once

// Finitely supported probability laws on R^K and couplings between them.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "margdist/common.hpp"

namespace margdist {

// A discrete probability measure: distinct atoms in R^K with positive weights
// summing to one. Atoms are stored sorted lexicographically, so equal measures
// have identical storage. Immutable after construction.
class DiscreteMeasure {
 public:
  // points and weights must have equal, nonzero length and all entries finite.
  // Duplicate points are merged by summing weights, exact zero weights are
  // dropped, and the weight sum must be 1 within 1e-9; weights are then
  // renormalized so the stored sum is 1 to machine precision.
  static DiscreteMeasure make(const std::vector<std::vector<double>>& points,
                              const std::vector<double>& weights);
  // Equal weights on the given points (after duplicate merging).
  static DiscreteMeasure uniform(const std::vector<std::vector<double>>& points);

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const double> atom(std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(dim_),
            static_cast<std::size_t>(dim_)};
  }
  double weight(std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const noexcept { return weights_; }

  // Pushforward under projection onto coordinate k (1-based).
  DiscreteMeasure marginal(int k) const;
  // Independent product of the K marginals.
  DiscreteMeasure product_of_marginals() const;
  // P([u, inf)): mass of the closed upper orthant at u.
  double survival(std::span<const double> u) const;
  // Sorted distinct values taken by coordinate k (1-based).
  std::vector<double> axis_values(int k) const;

 private:
  DiscreteMeasure(int dim, std::vector<double> coords, std::vector<double> weights);

  int dim_ = 0;
  std::vector<double> coords_;  // row-major, size() * dim_
  std::vector<double> weights_;
};

// True iff every pair of 1-D marginals has the same support (exact
// coordinates) with weights matching within tol. Dimensions must agree.
bool common_marginals_check(const DiscreteMeasure& p, const DiscreteMeasure& q, double tol);

// Exact sup over u in R^K of |P([u,inf)) - Q([u,inf))|. The survival function
// of a discrete law only changes when a coordinate of u crosses an atom value,
// so the sup is attained on the finite grid of per-axis coordinate values
// (plus one point below all values per axis) and is computed there.
double survival_sup_distance(const DiscreteMeasure& p, const DiscreteMeasure& q);

// Same atom set (exact coordinates) with weights matching within tol.
bool approx_equal(const DiscreteMeasure& p, const DiscreteMeasure& q, double tol);

// Two uniform n-atom laws sharing per-axis value pools: axis-1 values are
// paired with independent random permutations of the other axes' values, so
// the 1-D marginals agree exactly by construction. Deterministic in seed.
std::pair<DiscreteMeasure, DiscreteMeasure> random_common_marginal_pair(std::uint64_t seed,
                                                                        int dim, int n);

// A joint law on R^{2K} together with its stated K-dimensional side laws.
// Construction verifies that the projections of the base onto the first and
// last K coordinates equal the stated sides atomwise (weights within 1e-12).
class Coupling {
 public:
  Coupling(DiscreteMeasure base, DiscreteMeasure left, DiscreteMeasure right);

  const DiscreteMeasure& base() const noexcept { return base_; }
  const DiscreteMeasure& left() const noexcept { return left_; }
  const DiscreteMeasure& right() const noexcept { return right_; }
  // K: dimension of each side.
  int pair_dim() const noexcept { return left_.dim(); }

 private:
  DiscreteMeasure base_;
  DiscreteMeasure left_;
  DiscreteMeasure right_;
};

}  // namespace margdist
