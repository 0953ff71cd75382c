#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "margdist/common.hpp"
#include "margdist/measure.hpp"
#include "margdist/processes.hpp"

using namespace margdist;

namespace {

DiscreteMeasure empirical(const std::vector<std::array<double, 2>>& pts) {
  std::vector<std::vector<double>> v(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) v[i] = {pts[i][0], pts[i][1]};
  return DiscreteMeasure::uniform(v);
}

}  // namespace

TEST_CASE("mean absolute innovation closed forms") {
  CHECK(mean_abs_innovation(Innovation::normal) ==
        doctest::Approx(std::sqrt(2.0 / 3.14159265358979323846)));
  CHECK(mean_abs_innovation(Innovation::uniform_pm1) == 0.5);
  CHECK(mean_abs_innovation(Innovation::rademacher) == 1.0);
}

TEST_CASE("process specs validate their parameters") {
  CHECK_THROWS_AS(LinearProcessSpec::geometric(1.0, Innovation::normal), error);
  CHECK_THROWS_AS(LinearProcessSpec::geometric(-1.5, Innovation::normal), error);
  CHECK_THROWS_AS(LinearProcessSpec::geometric(0.5, Innovation::normal, 0), error);
  CHECK_THROWS_AS(LinearProcessSpec::from_coefficients({}, Innovation::normal), error);

  LinearProcessSpec padded = LinearProcessSpec::from_coefficients({1.0}, Innovation::normal);
  CHECK(padded.truncation() >= 1);
  CHECK(padded.coefficient(0) == 1.0);
  CHECK(padded.coefficient(1) == 0.0);
  CHECK(padded.coefficient(99) == 0.0);

  LinearProcessSpec geo = LinearProcessSpec::geometric(0.5, Innovation::normal);
  CHECK(geo.truncation() == kDefaultTruncation);
  CHECK(geo.coefficient(0) == 1.0);
  CHECK(geo.coefficient(3) == doctest::Approx(0.125));
}

TEST_CASE("tail coefficient sums") {
  LinearProcessSpec two = LinearProcessSpec::from_coefficients({1.0, 0.5}, Innovation::normal);
  CHECK(two.tail_abs_sum(0) == doctest::Approx(1.5));
  CHECK(two.tail_abs_sum(1) == doctest::Approx(0.5));
  CHECK(two.tail_abs_sum(3) == 0.0);

  LinearProcessSpec geo = LinearProcessSpec::geometric(0.5, Innovation::normal);
  CHECK(geo.tail_abs_sum(5) == doctest::Approx(0.0625).epsilon(1e-9));
}

TEST_CASE("analytic displacement bound worked values") {
  LinearProcessSpec geo = LinearProcessSpec::geometric(0.5, Innovation::normal);
  CHECK(std::fabs(analytic_bound(geo, 5) - 0.0997356) <= 1e-6);

  LinearProcessSpec two = LinearProcessSpec::from_coefficients({1.0, 0.5}, Innovation::normal);
  CHECK(analytic_bound(two, 3) == 0.0);

  LinearProcessSpec rad = LinearProcessSpec::geometric(0.5, Innovation::rademacher);
  CHECK(analytic_bound(rad, 1) == doctest::Approx(2.0));

  CHECK_THROWS_AS(analytic_bound(geo, 0), error);
}

TEST_CASE("analytic bound is nonincreasing in the lag") {
  LinearProcessSpec geo = LinearProcessSpec::geometric(0.7, Innovation::uniform_pm1);
  double prev = analytic_bound(geo, 1);
  for (int n = 2; n <= 20; ++n) {
    const double cur = analytic_bound(geo, n);
    CHECK(cur <= prev + 1e-15);
    prev = cur;
  }
}

TEST_CASE("a constant innovation stream collapses the coupling") {
  LinearProcessSpec geo = LinearProcessSpec::geometric(0.5, Innovation::rademacher, 8);
  auto plus_one = [] { return 1.0; };
  for (int lag = 1; lag <= 10; ++lag) {
    std::array<double, 3> t = simulate_triple(geo, lag, plus_one);
    CHECK(t[1] == t[2]);
  }
}

TEST_CASE("coupled draws share the first coordinate exactly") {
  LinearProcessSpec geo = LinearProcessSpec::geometric(0.5, Innovation::normal, 16);
  PairSample s = simulate_pair(geo, 3, 500, 12345);
  REQUIRE(s.x.size() == 500);
  REQUIRE(s.xp.size() == 500);
  for (std::size_t i = 0; i < s.x.size(); ++i) CHECK(s.x[i][0] == s.xp[i][0]);
}

TEST_CASE("per draw displacement respects the coefficient tail for bounded innovations") {
  for (Innovation inn : {Innovation::rademacher, Innovation::uniform_pm1}) {
    LinearProcessSpec geo = LinearProcessSpec::geometric(0.6, inn, 32);
    for (int lag : {1, 3, 6}) {
      PairSample s = simulate_pair(geo, lag, 400, 777);
      const double cap = 2.0 * geo.tail_abs_sum(lag);
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        CHECK(std::fabs(s.x[i][1] - s.xp[i][1]) <= cap + 1e-12);
      }
    }
  }
}

TEST_CASE("simulation is deterministic in the seed") {
  LinearProcessSpec geo = LinearProcessSpec::geometric(0.5, Innovation::normal, 16);
  PairSample a = simulate_pair(geo, 2, 100, 42);
  PairSample b = simulate_pair(geo, 2, 100, 42);
  REQUIRE(a.x.size() == b.x.size());
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    CHECK(a.x[i] == b.x[i]);
    CHECK(a.xp[i] == b.xp[i]);
  }
  PairSample c = simulate_pair(geo, 2, 100, 43);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    if (a.x[i] != c.x[i]) any_diff = true;
  }
  CHECK(any_diff);
}

TEST_CASE("empirical displacement stays near the analytic bound") {
  LinearProcessSpec geo = LinearProcessSpec::geometric(0.5, Innovation::normal, 32);
  PairSample s = simulate_pair(geo, 2, 4000, 2024);
  double mean = 0.0;
  for (std::size_t i = 0; i < s.x.size(); ++i) mean += std::fabs(s.x[i][1] - s.xp[i][1]);
  mean /= static_cast<double>(s.x.size());
  double var = 0.0;
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const double d = std::fabs(s.x[i][1] - s.xp[i][1]) - mean;
    var += d * d;
  }
  const double se = std::sqrt(var / static_cast<double>(s.x.size() - 1) /
                              static_cast<double>(s.x.size()));
  CHECK(mean <= analytic_bound(geo, 2) + 3.0 * se);
}

TEST_CASE("trivial tail makes the two empirical laws coincide") {
  LinearProcessSpec only_a0 = LinearProcessSpec::from_coefficients({1.0}, Innovation::normal);
  const std::size_t n = 20000;
  PairSample s = simulate_pair(only_a0, 2, n, 99);
  const double ss = survival_sup_distance(empirical(s.x), empirical(s.xp));
  const double envelope = 2.0 * std::sqrt(std::log(2.0 / 0.01) / (2.0 * static_cast<double>(n)));
  CHECK(ss <= envelope);
}

TEST_CASE("decay experiment emits one finite row per lag") {
  LinearProcessSpec geo = LinearProcessSpec::geometric(0.5, Innovation::normal, 8);
  std::vector<DecayRow> rows = decay_experiment(geo, {1}, 1, 7);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].lag == 1);
  CHECK(std::isfinite(rows[0].coupling_bound_emp));
  CHECK(std::isfinite(rows[0].coupling_bound_se));
  CHECK(std::isfinite(rows[0].analytic_bound));
  CHECK(std::isfinite(rows[0].survival_sup));
  CHECK(std::isfinite(rows[0].theorem2_of_coupling));

  CHECK_THROWS_AS(decay_experiment(geo, {}, 10, 7), error);
  CHECK_THROWS_AS(decay_experiment(geo, {0}, 10, 7), error);
}

TEST_CASE("decay experiment rows are internally consistent") {
  LinearProcessSpec geo = LinearProcessSpec::geometric(0.5, Innovation::normal, 16);
  std::vector<DecayRow> rows = decay_experiment(geo, {1, 4}, 600, 31337);
  REQUIRE(rows.size() == 2);
  for (const DecayRow& r : rows) {
    CHECK(r.analytic_bound == doctest::Approx(analytic_bound(geo, r.lag)));
    CHECK(r.coupling_bound_emp >= 0.0);
    CHECK(r.survival_sup >= 0.0);
    CHECK(r.survival_sup <= 1.0);
  }
  // Lag 4 shares fewer innovations, so both displacement measures shrink.
  CHECK(rows[1].analytic_bound < rows[0].analytic_bound);
}
