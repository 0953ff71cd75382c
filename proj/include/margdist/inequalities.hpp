#pragma once

// Covariance and product-moment bounds driven by step quantiles of
// transformed laws and by the orthant mixing coefficient.

#include <vector>

#include "margdist/measure.hpp"
#include "margdist/stepfn.hpp"

namespace margdist {

// Law of g(X) for a 1-D law of X.
DiscreteMeasure apply_monotone(const MonotoneStep& g, const DiscreteMeasure& p1);

// Upper quantile of g(X): Q(s) = inf{x : Pr(g(X) > x) <= s} on [0,1), a
// nonincreasing step with breakpoints at the survival probabilities of the
// law of g(X). Requires g nonnegative on the support.
StepQuantile quantile_g(const DiscreteMeasure& p1, const MonotoneStep& g);

// Exact integral over [0, theta) of the product of the step quantiles,
// computed cell by cell on the merged breakpoint partition; theta in [0,1].
double step_product_integral(const std::vector<StepQuantile>& qs, double theta);

// Bound on |integral of prod_k g_k(x_k) d(P - Q)| for laws with common
// marginals: 2 * integral over [0, theta) of prod_k Q_{g_k}, with
// theta = m1_distance(P,Q) / 2. The factor 2 is what the derivation's Fubini
// chain yields; dropping it is refuted by the comonotone-vs-independent
// Bernoulli(1/2) pair, where the product-moment gap is 1/4 but the bare
// integral is only 1/8.
double corollary1_bound(const DiscreteMeasure& p, const DiscreteMeasure& q,
                        const std::vector<MonotoneStep>& gs);

// Orthant mixing coefficient of a 2-D law:
// 2 * sup_{y,z} |Pr(Y>y, Z>z) - Pr(Y>y) Pr(Z>z)|, in [0, 1/2]. The strict
// survival functions only change at atom values, so probes between
// consecutive values (plus one below the minimum) are exact.
double alpha_coefficient(const DiscreteMeasure& j);

// Covariance bound 2 * integral over [0, alpha) of Q_{gY} Q_{gZ} for the
// mixing coefficient alpha of the joint law; gY, gZ nonnegative nondecreasing
// on the respective supports.
double rio_bound(const DiscreteMeasure& j, const MonotoneStep& g_y, const MonotoneStep& g_z);

// Same integral form with theta = 2 * min{sqrt(8 * d_bl), 1} in place of the
// mixing coefficient, where d_bl bounds the bounded-Lipschitz distance of the
// joint law from the product of its marginals. theta can reach 2; for s >= 1
// every threshold satisfies Pr(g(X) > x) <= s and with g >= 0 the admissible
// infimum is 0, so the integral is clamped to [0, min(theta, 1)).
double corollary2_bound(const DiscreteMeasure& j, const MonotoneStep& g_y,
                        const MonotoneStep& g_z, double d_bl);

// Cov(gY(Y), gZ(Z)) computed directly over the atoms of the joint law.
double covariance(const DiscreteMeasure& j, const MonotoneStep& g_y, const MonotoneStep& g_z);

}  // namespace margdist
