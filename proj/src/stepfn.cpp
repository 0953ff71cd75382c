#include "margdist/stepfn.hpp"

#include <algorithm>
#include <cmath>

namespace margdist {

MonotoneStep MonotoneStep::identity() {
  MonotoneStep g;
  g.identity_ = true;
  return g;
}

MonotoneStep MonotoneStep::constant(double c) { return make({}, {c}); }

MonotoneStep MonotoneStep::make(std::vector<double> breakpoints, std::vector<double> values) {
  if (values.size() != breakpoints.size() + 1)
    fail(errc::invalid_argument, "step function needs one more value than breakpoints");
  for (double t : breakpoints)
    if (!std::isfinite(t)) fail(errc::invalid_argument, "breakpoints must be finite");
  for (double v : values)
    if (!std::isfinite(v)) fail(errc::invalid_argument, "step values must be finite");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i - 1] < breakpoints[i]))
      fail(errc::invalid_argument, "breakpoints must be strictly increasing");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] < values[i - 1])
      fail(errc::invalid_argument, "step values must be nondecreasing");
  MonotoneStep g;
  g.breakpoints_ = std::move(breakpoints);
  g.values_ = std::move(values);
  return g;
}

double MonotoneStep::operator()(double x) const {
  if (identity_) return x;
  std::size_t i = static_cast<std::size_t>(
      std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) - breakpoints_.begin());
  return values_[i];
}

StepQuantile StepQuantile::make(std::vector<double> breakpoints, std::vector<double> values) {
  if (breakpoints.empty() || values.size() != breakpoints.size())
    fail(errc::invalid_argument, "quantile needs matching breakpoint and value counts");
  if (breakpoints.front() != 0.0) fail(errc::invalid_argument, "quantile breakpoints start at 0");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i - 1] < breakpoints[i]))
      fail(errc::invalid_argument, "quantile breakpoints must be strictly increasing");
  if (!(breakpoints.back() < 1.0))
    fail(errc::invalid_argument, "quantile breakpoints must stay below 1");
  for (double v : values)
    if (!std::isfinite(v) || v < 0.0)
      fail(errc::invalid_argument, "quantile values must be nonnegative");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[i - 1])
      fail(errc::invalid_argument, "quantile values must be nonincreasing");
  StepQuantile q;
  q.breakpoints_ = std::move(breakpoints);
  q.values_ = std::move(values);
  return q;
}

double StepQuantile::operator()(double s) const {
  if (!(s >= 0.0 && s < 1.0)) fail(errc::invalid_argument, "quantile argument outside [0,1)");
  std::size_t i = static_cast<std::size_t>(
      std::upper_bound(breakpoints_.begin(), breakpoints_.end(), s) - breakpoints_.begin());
  return values_[i - 1];
}

}  // namespace margdist
