#pragma once

// Coupled simulation of a truncated moving-average process. Each draw builds
// X = (Y_0, Y_lag) and X' = (Y_0, Y'_lag), where Y'_lag reuses the recent
// innovations of Y_lag but replaces every innovation at time t <= 0 with an
// independent copy. The first coordinates agree exactly, so the l1 distance
// between X and X' is |Y_lag - Y'_lag| draw by draw.

#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "margdist/common.hpp"

namespace margdist {

inline constexpr int kDefaultTruncation = 64;

enum class Innovation {
  normal,       // standard normal
  uniform_pm1,  // uniform on [-1, 1]
  rademacher,   // +1 or -1 with probability 1/2 each
};

// Mean absolute value of one innovation, in closed form.
double mean_abs_innovation(Innovation inn);

class LinearProcessSpec {
 public:
  // a_s = rho^s for 0 <= s <= truncation; requires |rho| < 1.
  static LinearProcessSpec geometric(double rho, Innovation inn,
                                     int truncation = kDefaultTruncation);
  // Explicit a_0..a_m; zero-padded so the truncation index is always >= 1.
  static LinearProcessSpec from_coefficients(std::vector<double> coeffs, Innovation inn);

  int truncation() const { return static_cast<int>(coeffs_.size()) - 1; }
  double coefficient(int s) const {
    return (s >= 0 && s < static_cast<int>(coeffs_.size())) ? coeffs_[s] : 0.0;
  }
  const std::vector<double>& coefficients() const { return coeffs_; }
  Innovation innovation() const { return inn_; }
  double mean_abs_innovation() const { return margdist::mean_abs_innovation(inn_); }

  // sum_{lag <= s <= truncation} |a_s|; the coupled copies differ only in the
  // innovations multiplying these coefficients.
  double tail_abs_sum(int lag) const;

 private:
  LinearProcessSpec(std::vector<double> coeffs, Innovation inn)
      : coeffs_(std::move(coeffs)), inn_(inn) {}

  std::vector<double> coeffs_;  // a_0..a_T
  Innovation inn_;
};

// One coupled draw from an innovation source. The source is consumed in a
// fixed order: z_t for t = -T..lag ascending, then the replacement z'_t for
// t = lag-T..0 ascending (empty when lag > T). Returns {y0, y_lag, y'_lag}.
template <class Source>
std::array<double, 3> simulate_triple(const LinearProcessSpec& spec, int lag, Source&& next) {
  const int t_max = spec.truncation();
  std::vector<double> z(static_cast<std::size_t>(t_max + lag + 1));
  for (auto& v : z) v = next();  // z[i] holds z_{i - T}
  std::vector<double> zp(static_cast<std::size_t>(lag <= t_max ? t_max - lag + 1 : 0));
  for (auto& v : zp) v = next();  // zp[i] holds z'_{i + lag - T}
  double y0 = 0.0, yn = 0.0, ynp = 0.0;
  for (int s = 0; s <= t_max; ++s) {
    const double a = spec.coefficient(s);
    y0 += a * z[static_cast<std::size_t>(t_max - s)];
    const double recent = a * z[static_cast<std::size_t>(t_max + lag - s)];
    yn += recent;
    if (s < lag) {
      ynp += recent;
    } else {
      ynp += a * zp[static_cast<std::size_t>(t_max - s)];
    }
  }
  return {y0, yn, ynp};
}

struct PairSample {
  std::vector<std::array<double, 2>> x;   // (y0, y_lag)
  std::vector<std::array<double, 2>> xp;  // (y0, y'_lag)
};

// Deterministic given (spec, lag, count, seed); draw i depends only on
// mix_seed(seed, i), so the sample is independent of evaluation order.
PairSample simulate_pair(const LinearProcessSpec& spec, int lag, std::size_t count,
                         std::uint64_t seed);

// 2 * E|Z| * tail_abs_sum(lag): upper bound on E|Y_lag - Y'_lag|, hence on the
// expected l1 displacement of the coupling.
double analytic_bound(const LinearProcessSpec& spec, int lag);

struct DecayRow {
  int lag = 0;
  double coupling_bound_emp = 0.0;      // mean |y_lag - y'_lag|
  double coupling_bound_se = 0.0;       // sample standard error of that mean
  double analytic_bound = 0.0;
  double survival_sup = 0.0;            // between the two empirical pair laws
  double theorem2_of_coupling = 0.0;    // bridge bound fed the empirical mean
};

std::vector<DecayRow> decay_experiment(const LinearProcessSpec& spec,
                                       const std::vector<int>& lags, std::size_t samples,
                                       std::uint64_t seed);

}  // namespace margdist
