#pragma once

// Randomized verification suites: inequality sweeps over generated instances
// and the solver-vs-oracle agreement test. Every trial derives its own stream
// key from (seed, trial index), so single trials can be replayed from the
// reported worst_seed.

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "margdist/common.hpp"
#include "margdist/measure.hpp"
#include "margdist/stepfn.hpp"

namespace margdist::suites {

struct VerifyConfig {
  int trials = 200;
  std::uint64_t seed = kDefaultSeed;
  std::vector<int> dims = {2, 3};                   // cycled over trials
  int max_support = 6;                              // atoms per measure, >= 1
  std::vector<double> ps = {1.0, 2.0, std::numeric_limits<double>::infinity()};
  double tol = 1e-9;                                // pass iff slack >= -tol
};

// Pass/fail accounting. slack is the checked inequality's margin (bound minus
// quantity it must dominate, or -|solver - oracle| for the selftest); a trial
// passes iff its slack stays above -tol.
struct VerifyReport {
  std::string suite;
  VerifyConfig config;
  int passes = 0;
  int failures = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  int worst_trial = -1;
  std::uint64_t worst_seed = 0;
  double worst_ratio = 0.0;  // largest m1 / sqrt(bl1) seen (bridge suite only)

  bool all_passed() const noexcept { return failures == 0; }
};

// Per trial: a random common-marginal pair, then for every configured p the
// monotone-class distance must stay below the square-root bridge bound of the
// bounded-Lipschitz distance.
VerifyReport run_theorem2_suite(const VerifyConfig& cfg);

// Per trial: a random common-marginal pair and random per-axis nonnegative
// nondecreasing steps; the product-moment gap must stay below the
// product-quantile integral bound. Trial 0 is the fixed Bernoulli
// certificate: bound and gap both exactly 1/4, and the gap strictly exceeds
// the factor-free half of the bound.
VerifyReport run_cor1_suite(const VerifyConfig& cfg);

// Per trial: a random feasible bounded LP (box bounds keep it bounded, a
// planted point keeps it feasible); simplex and enumeration oracle must agree
// on the value within tol, and the planted point must respect weak duality.
// Uses only trials, seed, and tol from the config.
VerifyReport run_lp_selftest(const VerifyConfig& cfg);

std::string report_to_json(const VerifyReport& r);

// Random nonnegative nondecreasing right-continuous step with breakpoints in
// [lo, hi]; returns the identity about one time in five (valid as long as the
// intended support is nonnegative).
MonotoneStep random_mrc_step(std::mt19937_64& eng, double lo, double hi);

// Random law on [0,1]^dim with 1..max_atoms atoms and random positive weights.
DiscreteMeasure random_measure(std::mt19937_64& eng, int dim, int max_atoms);

}  // namespace margdist::suites
