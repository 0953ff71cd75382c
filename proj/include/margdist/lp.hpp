#pragma once

// Exact linear programming: a dense dictionary simplex and an independent
// vertex-enumeration oracle used to cross-check it.

#include <optional>
#include <vector>

#include "margdist/common.hpp"

namespace margdist::lp {

// maximize objective . x subject to rows[i] . x <= rhs[i] and the optional
// per-variable bounds; variables without bounds are free.
struct LinearProgram {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<std::optional<double>> lower;
  std::vector<std::optional<double>> upper;

  explicit LinearProgram(int vars)
      : num_vars(vars), objective(vars, 0.0), lower(vars), upper(vars) {}
  void add_row(std::vector<double> a, double b);
};

enum class Status { optimal, infeasible, unbounded };

struct Solution {
  Status status = Status::infeasible;
  std::vector<double> x;  // meaningful when optimal
  double value = 0.0;
};

// Two-phase dense dictionary simplex; entering column by most negative
// reduced cost with ties broken on the lowest variable id, leaving row by
// minimum ratio with ties broken on the lowest basic id, so the pivot path is
// deterministic. Feasibility of the returned point is verified to 1e-9.
Solution solve(const LinearProgram& lp);

// Independent ground truth for small instances (num_vars <= 10): enumerates
// every basic solution (each subset of num_vars constraints, bounds included,
// solved as equalities), keeps the feasible ones, and returns the best.
// Unboundedness is detected through enumeration of feasible directions.
Solution enumerate_oracle(const LinearProgram& lp);

}  // namespace margdist::lp
