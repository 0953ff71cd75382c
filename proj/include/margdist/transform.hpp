#pragma once

// Distributional transforms between discrete laws on R^K and their copulas on
// [0,1]^K. The copula of a discrete law is an absolutely continuous mixture of
// axis-aligned rectangles: each atom x with weight w maps to the box
// prod_k [F_k(x_k-), F_k(x_k)] carrying mass w spread uniformly, which is the
// joint law of the randomized-CDF coordinates with the uniform randomizers
// integrated out.

#include <span>
#include <vector>

#include "margdist/measure.hpp"

namespace margdist {

// Mixture of uniform laws on axis-aligned rectangles inside [0,1]^K.
class RectMixture {
 public:
  struct Component {
    std::vector<double> lower;
    std::vector<double> upper;
    double weight = 0.0;
  };

  // Per component and axis: 0 <= lower < upper <= 1; weights nonnegative and
  // summing to 1 within 1e-12.
  static RectMixture make(int dim, std::vector<Component> components);

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return components_.size(); }
  const Component& component(std::size_t i) const { return components_[i]; }
  const std::vector<Component>& components() const noexcept { return components_; }

 private:
  RectMixture() = default;

  int dim_ = 0;
  std::vector<Component> components_;
};

// Randomized CDF value Pr(X < x) + v * Pr(X = x) for a 1-D law; v in [0,1].
double dtransform(const DiscreteMeasure& p1, double x, double v);

// Smallest atom whose cumulative probability reaches u; u in (0,1].
double pseudo_inverse(const DiscreteMeasure& p1, double u);

// The rectangle-mixture copula of p described above.
RectMixture to_copula(const DiscreteMeasure& p);

// C(u) = Pr(U <= u) for the mixture law; u in [0,1]^K.
double copula_cdf(const RectMixture& c, std::span<const double> u);

// Survival form Pr(U >= u); u in [0,1]^K.
double survival_copula(const RectMixture& c, std::span<const double> u);

// Exact sup over [0,1]^K of |Pr(U >= u) - Pr(U' >= u)|. Within every cell of
// the grid spanned by the component interval endpoints both survival functions
// are products of per-axis affine factors, so their difference is multi-affine
// and attains its extremes at cell vertices; those vertices are enumerated.
double copula_sup_distance(const RectMixture& c, const RectMixture& d);

// Coordinatewise pseudo-inverse map applied to u; every u_k in (0,1].
std::vector<double> quantile_map(std::span<const double> u,
                                 const std::vector<DiscreteMeasure>& marginals);

// Pushforward of the mixture under the coordinatewise pseudo-inverse of the
// given 1-D marginals. Component interval endpoints must lie on the marginal
// CDF grids within 1e-12; intervals spanning several CDF cells are split with
// mass proportional to cell overlap.
DiscreteMeasure push_back(const RectMixture& c, const std::vector<DiscreteMeasure>& marginals);

// Largest deviation of the per-axis marginals of c from the uniform law,
// probed at grid_points evenly spaced thresholds in [0,1] per axis.
double max_uniform_marginal_error(const RectMixture& c, int grid_points);

}  // namespace margdist
