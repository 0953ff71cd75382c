#pragma once

// Right-continuous nondecreasing step functions on R and nonincreasing
// quantile step functions on [0,1).

#include <span>
#include <vector>

#include "margdist/common.hpp"

namespace margdist {

// g(x) = values[0] for x < breakpoints[0], values[i] for
// breakpoints[i-1] <= x < breakpoints[i], values[m] for x >= breakpoints[m-1].
// Breakpoints are strictly increasing and values nondecreasing, so g is
// right-continuous and nondecreasing. The identity map gets a pass-through
// representation because it is not a finite step function.
class MonotoneStep {
 public:
  static MonotoneStep identity();
  static MonotoneStep constant(double c);
  // values.size() == breakpoints.size() + 1.
  static MonotoneStep make(std::vector<double> breakpoints, std::vector<double> values);

  bool is_identity() const noexcept { return identity_; }
  double operator()(double x) const;

  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  MonotoneStep() = default;

  bool identity_ = false;
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

// Q(s) = values[i] for breakpoints[i] <= s < breakpoints[i+1] (last cell
// extends to 1). breakpoints[0] == 0, breakpoints strictly increasing and
// below 1, values nonincreasing and nonnegative. Domain is [0,1).
class StepQuantile {
 public:
  static StepQuantile make(std::vector<double> breakpoints, std::vector<double> values);

  double operator()(double s) const;

  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  StepQuantile() = default;

  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

}  // namespace margdist
