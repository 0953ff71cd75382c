#include "margdist/processes.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "margdist/measure.hpp"
#include "margdist/metrics.hpp"

namespace margdist {
namespace {

struct InnovationSource {
  Innovation kind;
  std::mt19937_64 eng;
  std::normal_distribution<double> normal{0.0, 1.0};
  std::uniform_real_distribution<double> unif{-1.0, 1.0};

  double operator()() {
    switch (kind) {
      case Innovation::normal:
        return normal(eng);
      case Innovation::uniform_pm1:
        return unif(eng);
      case Innovation::rademacher:
        return (eng() & 1ull) ? 1.0 : -1.0;
    }
    fail(errc::invalid_argument, "unknown innovation kind");
  }
};

}  // namespace

double mean_abs_innovation(Innovation inn) {
  switch (inn) {
    case Innovation::normal:
      return std::sqrt(2.0 / std::numbers::pi);
    case Innovation::uniform_pm1:
      return 0.5;
    case Innovation::rademacher:
      return 1.0;
  }
  fail(errc::invalid_argument, "unknown innovation kind");
}

LinearProcessSpec LinearProcessSpec::geometric(double rho, Innovation inn, int truncation) {
  if (!(std::fabs(rho) < 1.0))
    fail(errc::invalid_argument, "geometric coefficient requires |rho| < 1");
  if (truncation < 1) fail(errc::invalid_argument, "truncation must be at least 1");
  std::vector<double> coeffs(static_cast<std::size_t>(truncation) + 1);
  double a = 1.0;
  for (auto& c : coeffs) {
    c = a;
    a *= rho;
  }
  return LinearProcessSpec(std::move(coeffs), inn);
}

LinearProcessSpec LinearProcessSpec::from_coefficients(std::vector<double> coeffs,
                                                       Innovation inn) {
  if (coeffs.empty()) fail(errc::invalid_argument, "coefficient list is empty");
  for (double c : coeffs)
    if (!std::isfinite(c)) fail(errc::invalid_argument, "coefficients must be finite");
  while (coeffs.size() < 2) coeffs.push_back(0.0);  // keep truncation index >= 1
  return LinearProcessSpec(std::move(coeffs), inn);
}

double LinearProcessSpec::tail_abs_sum(int lag) const {
  if (lag < 0) fail(errc::invalid_argument, "lag must be nonnegative");
  double total = 0.0;
  for (int s = lag; s <= truncation(); ++s) total += std::fabs(coeffs_[static_cast<std::size_t>(s)]);
  return total;
}

PairSample simulate_pair(const LinearProcessSpec& spec, int lag, std::size_t count,
                         std::uint64_t seed) {
  if (lag < 1) fail(errc::invalid_argument, "lag must be at least 1");
  if (count < 1) fail(errc::invalid_argument, "sample count must be at least 1");
  PairSample out;
  out.x.resize(count);
  out.xp.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    InnovationSource src{spec.innovation(), std::mt19937_64(mix_seed(seed, i))};
    const auto [y0, yn, ynp] = simulate_triple(spec, lag, src);
    out.x[i] = {y0, yn};
    out.xp[i] = {y0, ynp};
  }
  return out;
}

double analytic_bound(const LinearProcessSpec& spec, int lag) {
  if (lag < 1) fail(errc::invalid_argument, "lag must be at least 1");
  return 2.0 * spec.mean_abs_innovation() * spec.tail_abs_sum(lag);
}

std::vector<DecayRow> decay_experiment(const LinearProcessSpec& spec,
                                       const std::vector<int>& lags, std::size_t samples,
                                       std::uint64_t seed) {
  if (lags.empty()) fail(errc::invalid_argument, "need at least one lag");
  std::vector<DecayRow> rows;
  rows.reserve(lags.size());
  for (int lag : lags) {
    const PairSample s = simulate_pair(spec, lag, samples, seed);
    const double n = static_cast<double>(samples);
    double mean = 0.0;
    for (std::size_t i = 0; i < samples; ++i) mean += std::fabs(s.x[i][1] - s.xp[i][1]);
    mean /= n;
    double var = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
      const double d = std::fabs(s.x[i][1] - s.xp[i][1]) - mean;
      var += d * d;
    }
    const double se = samples > 1 ? std::sqrt(var / (n - 1.0)) / std::sqrt(n) : 0.0;

    std::vector<std::vector<double>> px, qx;
    px.reserve(samples);
    qx.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
      px.push_back({s.x[i][0], s.x[i][1]});
      qx.push_back({s.xp[i][0], s.xp[i][1]});
    }
    const DiscreteMeasure p = DiscreteMeasure::uniform(std::move(px));
    const DiscreteMeasure q = DiscreteMeasure::uniform(std::move(qx));

    DecayRow row;
    row.lag = lag;
    row.coupling_bound_emp = mean;
    row.coupling_bound_se = se;
    row.analytic_bound = analytic_bound(spec, lag);
    row.survival_sup = survival_sup_distance(p, q);
    row.theorem2_of_coupling = theorem2_bound(mean, 2, MetricChoice::l1());
    rows.push_back(row);
  }
  return rows;
}

}  // namespace margdist
