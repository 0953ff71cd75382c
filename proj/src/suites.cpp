#include "margdist/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "margdist/inequalities.hpp"
#include "margdist/lp.hpp"
#include "margdist/metrics.hpp"

namespace margdist::suites {
namespace {

using nlohmann::json;

std::string p_to_string(double p) {
  if (std::isinf(p)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", p);
  return buf;
}

struct SlackTracker {
  VerifyReport report;

  explicit SlackTracker(std::string suite, const VerifyConfig& cfg) {
    report.suite = std::move(suite);
    report.config = cfg;
  }

  void record(int trial, std::uint64_t trial_seed, double slack, bool pass) {
    if (pass) {
      ++report.passes;
    } else {
      ++report.failures;
    }
    if (slack < report.worst_slack) {
      report.worst_slack = slack;
      report.worst_trial = trial;
      report.worst_seed = trial_seed;
    }
  }
};

DiscreteMeasure bernoulli_comonotone() {
  return DiscreteMeasure::uniform({{0.0, 0.0}, {1.0, 1.0}});
}

double product_moment_gap(const DiscreteMeasure& p, const DiscreteMeasure& q,
                          const std::vector<MonotoneStep>& gs) {
  auto integral = [&](const DiscreteMeasure& m) {
    double total = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      auto a = m.atom(i);
      double prod = 1.0;
      for (int k = 0; k < m.dim(); ++k) prod *= gs[static_cast<std::size_t>(k)](a[k]);
      total += m.weight(i) * prod;
    }
    return total;
  };
  return std::fabs(integral(p) - integral(q));
}

}  // namespace

MonotoneStep random_mrc_step(std::mt19937_64& eng, double lo, double hi) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const std::uint64_t shape = eng() % 5;
  if (shape == 0) return MonotoneStep::identity();
  if (shape == 1) return MonotoneStep::constant(unif(eng));
  const int m = 1 + static_cast<int>(eng() % 3);
  std::uniform_real_distribution<double> where(lo - 0.25, hi + 0.25);
  std::vector<double> breaks;
  while (static_cast<int>(breaks.size()) < m) {
    const double b = where(eng);
    if (std::find(breaks.begin(), breaks.end(), b) == breaks.end()) breaks.push_back(b);
  }
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> values(static_cast<std::size_t>(m) + 1);
  double level = unif(eng) * 0.5;
  for (auto& v : values) {
    v = level;
    level += unif(eng);
  }
  return MonotoneStep::make(std::move(breaks), std::move(values));
}

DiscreteMeasure random_measure(std::mt19937_64& eng, int dim, int max_atoms) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int n = 1 + static_cast<int>(eng() % static_cast<std::uint64_t>(max_atoms));
  std::vector<std::vector<double>> pts(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(dim)));
  std::vector<double> w(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < dim; ++k) pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = unif(eng);
    w[static_cast<std::size_t>(i)] = 0.1 + unif(eng);
    sum += w[static_cast<std::size_t>(i)];
  }
  for (auto& x : w) x /= sum;
  return DiscreteMeasure::make(pts, w);
}

VerifyReport run_theorem2_suite(const VerifyConfig& cfg) {
  if (cfg.trials < 1) fail(errc::invalid_argument, "trials must be >= 1");
  if (cfg.dims.empty() || cfg.ps.empty())
    fail(errc::invalid_argument, "need at least one dimension and one p");
  SlackTracker tracker("theorem2", cfg);
  for (int t = 0; t < cfg.trials; ++t) {
    const std::uint64_t tseed = mix_seed(cfg.seed, static_cast<std::uint64_t>(t));
    std::mt19937_64 eng(splitmix64(tseed ^ 0x7453c0de));
    const int dim = cfg.dims[static_cast<std::size_t>(t) % cfg.dims.size()];
    const int n = 1 + static_cast<int>(eng() % static_cast<std::uint64_t>(cfg.max_support));
    const auto [p, q] = random_common_marginal_pair(tseed, dim, n);
    const double m1 = m1_distance(p, q);
    double slack = std::numeric_limits<double>::infinity();
    for (double pv : cfg.ps) {
      const MetricChoice metric(pv);
      const double bl = bl1_distance(p, q, metric).value;
      const double bridge = theorem2_bound(bl, dim, metric);
      slack = std::min(slack, bridge - m1);
      if (bl > cfg.tol)
        tracker.report.worst_ratio = std::max(tracker.report.worst_ratio, m1 / std::sqrt(bl));
    }
    tracker.record(t, tseed, slack, slack >= -cfg.tol);
  }
  return tracker.report;
}

VerifyReport run_cor1_suite(const VerifyConfig& cfg) {
  if (cfg.trials < 1) fail(errc::invalid_argument, "trials must be >= 1");
  if (cfg.dims.empty()) fail(errc::invalid_argument, "need at least one dimension");
  SlackTracker tracker("cor1", cfg);
  for (int t = 0; t < cfg.trials; ++t) {
    const std::uint64_t tseed = mix_seed(cfg.seed, static_cast<std::uint64_t>(t));
    if (t == 0) {
      // Fixed certificate: comonotone vs independent Bernoulli(1/2) pairs.
      // The gap and the bound are both exactly 1/4, and the factor-free half
      // of the bound (1/8) sits strictly below the gap.
      const DiscreteMeasure p = bernoulli_comonotone();
      const DiscreteMeasure q = p.product_of_marginals();
      const std::vector<MonotoneStep> gs(2, MonotoneStep::identity());
      const double bound = corollary1_bound(p, q, gs);
      const double gap = product_moment_gap(p, q, gs);
      const bool pass = bound - gap >= -cfg.tol && std::fabs(bound - 0.25) <= 1e-12 &&
                        std::fabs(gap - 0.25) <= 1e-12 && bound / 2.0 + 1e-12 < gap;
      tracker.record(t, tseed, bound - gap, pass);
      continue;
    }
    std::mt19937_64 eng(splitmix64(tseed ^ 0x5eedc0de));
    const int dim = cfg.dims[static_cast<std::size_t>(t) % cfg.dims.size()];
    const int n = 1 + static_cast<int>(eng() % static_cast<std::uint64_t>(cfg.max_support));
    const auto [p, q] = random_common_marginal_pair(tseed, dim, n);
    std::vector<MonotoneStep> gs;
    gs.reserve(static_cast<std::size_t>(dim));
    for (int k = 1; k <= dim; ++k) {
      const auto vals = p.axis_values(k);
      gs.push_back(random_mrc_step(eng, vals.front(), vals.back()));
    }
    const double bound = corollary1_bound(p, q, gs);
    const double gap = product_moment_gap(p, q, gs);
    const double slack = bound - gap;
    tracker.record(t, tseed, slack, slack >= -cfg.tol);
  }
  return tracker.report;
}

VerifyReport run_lp_selftest(const VerifyConfig& cfg) {
  if (cfg.trials < 1) fail(errc::invalid_argument, "trials must be >= 1");
  SlackTracker tracker("lp-selftest", cfg);
  for (int t = 0; t < cfg.trials; ++t) {
    const std::uint64_t tseed = mix_seed(cfg.seed, static_cast<std::uint64_t>(t));
    std::mt19937_64 eng(tseed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> inner(-1.0, 2.0);
    std::uniform_real_distribution<double> gap(0.0, 1.0);
    const int n = 1 + static_cast<int>(eng() % 6);
    const int m = n + 1 + static_cast<int>(eng() % 6);
    lp::LinearProgram prog(n);
    for (int j = 0; j < n; ++j) {
      prog.objective[static_cast<std::size_t>(j)] = unit(eng);
      prog.lower[static_cast<std::size_t>(j)] = -2.0;
      prog.upper[static_cast<std::size_t>(j)] = 3.0;
    }
    std::vector<double> planted(static_cast<std::size_t>(n));
    for (auto& x : planted) x = inner(eng);
    for (int i = 0; i < m; ++i) {
      std::vector<double> row(static_cast<std::size_t>(n));
      double dot = 0.0;
      for (int j = 0; j < n; ++j) {
        row[static_cast<std::size_t>(j)] = unit(eng);
        dot += row[static_cast<std::size_t>(j)] * planted[static_cast<std::size_t>(j)];
      }
      prog.add_row(std::move(row), dot + gap(eng));
    }
    const lp::Solution fast = lp::solve(prog);
    const lp::Solution exact = lp::enumerate_oracle(prog);
    double slack = -std::numeric_limits<double>::infinity();
    if (fast.status == lp::Status::optimal && exact.status == lp::Status::optimal) {
      double planted_value = 0.0;
      for (int j = 0; j < n; ++j)
        planted_value += prog.objective[static_cast<std::size_t>(j)] * planted[static_cast<std::size_t>(j)];
      slack = std::min(-std::fabs(fast.value - exact.value), fast.value - planted_value);
    }
    tracker.record(t, tseed, slack, slack >= -cfg.tol);
  }
  return tracker.report;
}

std::string report_to_json(const VerifyReport& r) {
  json ps = json::array();
  for (double p : r.config.ps) ps.push_back(p_to_string(p));
  json j = {
      {"suite", r.suite},
      {"trials", r.config.trials},
      {"passes", r.passes},
      {"failures", r.failures},
      {"all_passed", r.all_passed()},
      {"worst_slack", r.worst_slack},
      {"worst_trial", r.worst_trial},
      {"worst_seed", r.worst_seed},
      {"config",
       {{"seed", r.config.seed},
        {"tol", r.config.tol},
        {"dims", r.config.dims},
        {"max_support", r.config.max_support},
        {"ps", std::move(ps)}}},
  };
  if (r.suite == "theorem2") j["worst_ratio"] = r.worst_ratio;
  return j.dump(2);
}

}  // namespace margdist::suites
