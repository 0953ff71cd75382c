#pragma once

// Probability metrics between finitely supported laws: the monotone-class
// distance, the exact bounded-Lipschitz distance by linear programming, and
// the square-root bound relating the two.

#include <span>
#include <vector>

#include "margdist/measure.hpp"
#include "margdist/stepfn.hpp"

namespace margdist {

// Ground distance r_p(x,y) = (sum_k |x_k - y_k|^p)^(1/p); p may be infinity
// (max coordinate difference).
struct MetricChoice {
  double p = 1.0;

  explicit MetricChoice(double p_in);
  static MetricChoice l1() { return MetricChoice(1.0); }
  static MetricChoice l2() { return MetricChoice(2.0); }
  static MetricChoice linf();

  double operator()(std::span<const double> a, std::span<const double> b) const;
};

// Optimal test function for the bounded-Lipschitz program, reported on the
// union support. sup_part bounds |f| and lip_part its Lipschitz constant;
// sup_part + lip_part <= 1 and the witness attains value, all within 1e-9.
struct BLReport {
  double value = 0.0;
  std::vector<std::vector<double>> support;
  std::vector<double> witness_values;
  double sup_part = 0.0;
  double lip_part = 0.0;
};

// Distance over coordinatewise nondecreasing test functions into [0,1].
// Requires common marginals (tolerance 1e-9); equals the exact survival-sup
// sweep under that hypothesis.
double m1_distance(const DiscreteMeasure& p, const DiscreteMeasure& q);

// Exact distance over {f : sup|f| + Lip_rp(f) <= 1}, solved as a linear
// program over the union support. Restricting f to the support is lossless:
// any feasible assignment extends to all of R^K with the same sup norm and
// Lipschitz constant (McShane extension, truncated at the sup bound), and
// integrals against p and q only see support values.
BLReport bl1_distance(const DiscreteMeasure& p, const DiscreteMeasure& q, const MetricChoice& m);

// Expected ground distance between the two halves of the coupling; an upper
// bound for bl1_distance between its side laws.
double bl1_coupling_bound(const Coupling& c, const MetricChoice& m);

// min{ 2^(3/2) * K^((p-1)/(2p)) * sqrt(d_bl), 1 }; the exponent is 1/2 at
// p = infinity. Upper bound for the monotone-class distance in dimension K.
double theorem2_bound(double d_bl, int dim, const MetricChoice& m);

// A test function for the monotone lower bound: either the indicator of a
// closed upper orthant or a product of per-axis nonnegative nondecreasing
// steps. Must map the union support into [0,1].
class MonotoneTestFn {
 public:
  static MonotoneTestFn orthant(std::vector<double> corner);
  static MonotoneTestFn product(std::vector<MonotoneStep> factors);
  double operator()(std::span<const double> x) const;
  int dim() const noexcept { return static_cast<int>(factors_.size()); }

 private:
  MonotoneTestFn() = default;
  std::vector<MonotoneStep> factors_;
};

// max_f |integral of f d(p - q)| over the supplied functions (0 if none);
// a lower bound for m1_distance. Each function is validated on the union
// support: values in [0,1] and coordinatewise monotone.
double monotone_lb(const DiscreteMeasure& p, const DiscreteMeasure& q,
                   const std::vector<MonotoneTestFn>& fs);

// Certificate check, independent of the solver: witness feasibility and
// attainment of the reported value within 1e-9. Throws on violation.
void validate_bl_report(const DiscreteMeasure& p, const DiscreteMeasure& q,
                        const MetricChoice& m, const BLReport& report);

}  // namespace margdist
