#include "margdist/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

namespace margdist::lp {
namespace {

constexpr double kEps = 1e-9;
constexpr double kFeasTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

void validate(const LinearProgram& lp) {
  if (lp.num_vars < 1) fail(errc::invalid_argument, "program needs at least one variable");
  auto check_len = [&](std::size_t n, const char* what) {
    if (static_cast<int>(n) != lp.num_vars) fail(errc::invalid_argument, what);
  };
  check_len(lp.objective.size(), "objective length mismatch");
  check_len(lp.lower.size(), "lower bound list length mismatch");
  check_len(lp.upper.size(), "upper bound list length mismatch");
  if (lp.rows.size() != lp.rhs.size()) fail(errc::invalid_argument, "row and rhs counts differ");
  for (double c : lp.objective)
    if (!std::isfinite(c)) fail(errc::invalid_argument, "objective must be finite");
  for (const auto& row : lp.rows) {
    check_len(row.size(), "row length mismatch");
    for (double a : row)
      if (!std::isfinite(a)) fail(errc::invalid_argument, "row coefficients must be finite");
  }
  for (double b : lp.rhs)
    if (!std::isfinite(b)) fail(errc::invalid_argument, "rhs must be finite");
  for (int j = 0; j < lp.num_vars; ++j) {
    if (lp.lower[j] && !std::isfinite(*lp.lower[j]))
      fail(errc::invalid_argument, "bounds must be finite");
    if (lp.upper[j] && !std::isfinite(*lp.upper[j]))
      fail(errc::invalid_argument, "bounds must be finite");
    if (lp.lower[j] && lp.upper[j] && *lp.lower[j] > *lp.upper[j])
      fail(errc::invalid_argument, "lower bound exceeds upper bound");
  }
}

// Dense dictionary simplex on the standard form max c.y, A y <= b, y >= 0.
// D is the (m+2) x (n+2) dictionary: row m holds the reduced costs of the real
// objective, row m+1 those of the auxiliary feasibility objective, column n
// the auxiliary variable and column n+1 the basic values. The tableau is kept
// in long double: desk-scale programs stay well within its headroom even
// across a few hundred pivots.
class DictSimplex {
 public:
  DictSimplex(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
              const std::vector<double>& c)
      : m_(static_cast<int>(b.size())), n_(static_cast<int>(c.size())), N_(n_ + 1), B_(m_),
        D_(m_ + 2, std::vector<long double>(n_ + 2, 0.0L)) {
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < n_; ++j) D_[i][j] = A[i][j];
    for (int i = 0; i < m_; ++i) {
      B_[i] = n_ + i;
      D_[i][n_] = -1.0L;
      D_[i][n_ + 1] = b[i];
    }
    for (int j = 0; j < n_; ++j) {
      N_[j] = j;
      D_[m_][j] = -c[j];
    }
    N_[n_] = -1;
    D_[m_ + 1][n_] = 1.0L;
  }

  // Returns +inf when unbounded, -inf when infeasible, the optimum otherwise.
  double run(std::vector<double>& x) {
    int r = 0;
    for (int i = 1; i < m_; ++i)
      if (D_[i][n_ + 1] < D_[r][n_ + 1]) r = i;
    if (D_[r][n_ + 1] < -kEps) {
      pivot(r, n_);
      if (!optimize(2) || D_[m_ + 1][n_ + 1] < -kEps) return -kInf;
      for (int i = 0; i < m_; ++i) {
        if (B_[i] != -1) continue;
        // Auxiliary variable stuck basic at zero: pivot it out on the largest
        // usable coefficient. If the whole row has decayed to zero it encodes
        // a redundant constraint; retire it outright, because a basic
        // auxiliary left in place could drift upward during the optimizing
        // phase and silently relax that constraint.
        int s = -1;
        for (int j = 0; j < n_ + 1; ++j) {
          if (N_[j] == -1) continue;
          const long double mag = std::fabs(static_cast<double>(D_[i][j]));
          if (mag <= kEps) continue;
          if (s == -1 || mag > std::fabs(static_cast<double>(D_[i][s]))) s = j;
        }
        if (s != -1) {
          pivot(i, s);
        } else {
          std::fill(D_[i].begin(), D_[i].end(), 0.0L);
          B_[i] = n_ + m_ + i;
        }
      }
    }
    bool bounded = optimize(1);
    x.assign(n_, 0.0);
    for (int i = 0; i < m_; ++i)
      if (B_[i] >= 0 && B_[i] < n_) x[B_[i]] = static_cast<double>(D_[i][n_ + 1]);
    return bounded ? static_cast<double>(D_[m_][n_ + 1]) : kInf;
  }

 private:
  // phase 1 optimizes the real objective (row m), phase 2 the auxiliary
  // feasibility objective (row m+1, with the auxiliary column eligible).
  bool optimize(int phase) {
    const int obj = m_ + phase - 1;
    for (;;) {
      // Entering column: most negative reduced cost, ties to the lowest
      // variable id; leaving row: least ratio, ties to the lowest basic id.
      // The id tie-breaks keep degenerate runs short in practice, which
      // matters more for tableau accuracy than a worst-case cycling proof.
      int s = -1;
      for (int j = 0; j < n_ + 1; ++j) {
        if (N_[j] == -phase) continue;
        if (s == -1 || D_[obj][j] < D_[obj][s] ||
            (D_[obj][j] == D_[obj][s] && N_[j] < N_[s]))
          s = j;
      }
      if (s == -1 || D_[obj][s] >= -kEps) return true;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (D_[i][s] <= kEps) continue;
        if (r == -1) {
          r = i;
          continue;
        }
        const long double ri = D_[i][n_ + 1] / D_[i][s];
        const long double rr = D_[r][n_ + 1] / D_[r][s];
        if (ri < rr || (ri == rr && B_[i] < B_[r])) r = i;
      }
      if (r == -1) return false;  // unbounded along column s
      pivot(r, s);
    }
  }

  void pivot(int r, int s) {
    long double* a = D_[r].data();
    const long double inv = 1.0L / a[s];
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r || std::fabs(static_cast<double>(D_[i][s])) <= 1e-16) continue;
      long double* b = D_[i].data();
      const long double factor = b[s] * inv;
      for (int j = 0; j < n_ + 2; ++j) b[j] -= a[j] * factor;
      b[s] = a[s] * factor;
    }
    for (int j = 0; j < n_ + 2; ++j)
      if (j != s) D_[r][j] *= inv;
    for (int i = 0; i < m_ + 2; ++i)
      if (i != r) D_[i][s] *= -inv;
    D_[r][s] = inv;
    std::swap(B_[r], N_[s]);
  }

  int m_, n_;
  std::vector<int> N_, B_;
  std::vector<std::vector<long double>> D_;
};

double dot(const std::vector<double>& a, const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
  return s;
}

// All constraints as rows a.x <= b, bounds included.
struct RowSystem {
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
};

RowSystem all_rows(const LinearProgram& lp) {
  RowSystem sys;
  sys.rows = lp.rows;
  sys.rhs = lp.rhs;
  for (int j = 0; j < lp.num_vars; ++j) {
    if (lp.lower[j]) {
      std::vector<double> row(lp.num_vars, 0.0);
      row[j] = -1.0;
      sys.rows.push_back(std::move(row));
      sys.rhs.push_back(-*lp.lower[j]);
    }
    if (lp.upper[j]) {
      std::vector<double> row(lp.num_vars, 0.0);
      row[j] = 1.0;
      sys.rows.push_back(std::move(row));
      sys.rhs.push_back(*lp.upper[j]);
    }
  }
  return sys;
}

bool feasible_point(const RowSystem& sys, const std::vector<double>& x, double tol) {
  for (std::size_t i = 0; i < sys.rows.size(); ++i)
    if (dot(sys.rows[i], x) > sys.rhs[i] + tol) return false;
  return true;
}

// Solve the square system M x = v by Gaussian elimination with partial
// pivoting; empty result when (numerically) singular.
std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> M,
                                                std::vector<double> v) {
  const int n = static_cast<int>(v.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int i = col + 1; i < n; ++i)
      if (std::fabs(M[i][col]) > std::fabs(M[piv][col])) piv = i;
    if (std::fabs(M[piv][col]) < 1e-11) return std::nullopt;
    std::swap(M[piv], M[col]);
    std::swap(v[piv], v[col]);
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      double f = M[i][col] / M[col][col];
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j) M[i][j] -= f * M[col][j];
      v[i] -= f * v[col];
    }
  }
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = v[i] / M[i][i];
  return x;
}

// One-dimensional nullspace of the (n-1) x n system, if the rank is n-1.
std::optional<std::vector<double>> nullspace_dir(std::vector<std::vector<double>> M, int n) {
  const int m = static_cast<int>(M.size());
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < n && row < m; ++col) {
    int piv = row;
    for (int i = row + 1; i < m; ++i)
      if (std::fabs(M[i][col]) > std::fabs(M[piv][col])) piv = i;
    if (std::fabs(M[piv][col]) < 1e-11) continue;
    std::swap(M[piv], M[row]);
    for (int i = 0; i < m; ++i) {
      if (i == row) continue;
      double f = M[i][col] / M[row][col];
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) M[i][j] -= f * M[row][j];
    }
    pivot_col.push_back(col);
    ++row;
  }
  if (row != n - 1) return std::nullopt;  // rank deficient: no unique direction
  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[c] = true;
  int free_col = 0;
  while (is_pivot[free_col]) ++free_col;
  std::vector<double> d(n, 0.0);
  d[free_col] = 1.0;
  for (int i = 0; i < row; ++i) d[pivot_col[i]] = -M[i][free_col] / M[i][pivot_col[i]];
  double norm = 0.0;
  for (double v : d) norm = std::max(norm, std::fabs(v));
  for (double& v : d) v /= norm;
  return d;
}

// Visit all size-k subsets of {0..m-1}.
template <typename F>
void for_each_subset(int m, int k, F&& fn) {
  std::vector<int> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  if (k > m) return;
  for (;;) {
    fn(pick);
    int i = k - 1;
    while (i >= 0 && pick[i] == m - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace

void LinearProgram::add_row(std::vector<double> a, double b) {
  rows.push_back(std::move(a));
  rhs.push_back(b);
}

Solution solve(const LinearProgram& lp) {
  validate(lp);
  const int n = lp.num_vars;
  // Standard-form reduction: shift variables with finite lower bounds, give
  // the free ones a shared subtractor y0 (x_j = y_j - y0), and turn upper
  // bounds into rows. A direction that only raises y0 and every free y_j
  // leaves x unchanged and gains nothing, so the reduction cannot introduce a
  // spurious unbounded status.
  std::vector<int> free_vars;
  std::vector<double> shift(n, 0.0);
  for (int j = 0; j < n; ++j) {
    if (lp.lower[j]) shift[j] = *lp.lower[j];
    else free_vars.push_back(j);
  }
  const bool has_free = !free_vars.empty();
  const int nn = n + (has_free ? 1 : 0);
  const int sub = n;  // index of the shared subtractor, when present

  std::vector<std::vector<double>> A;
  std::vector<double> b;
  auto push_transformed = [&](const std::vector<double>& row, double rhs_val) {
    std::vector<double> r(nn, 0.0);
    double off = 0.0;
    double free_sum = 0.0;
    for (int j = 0; j < n; ++j) {
      r[j] = row[j];
      off += row[j] * shift[j];
      if (!lp.lower[j]) free_sum += row[j];
    }
    if (has_free) r[sub] = -free_sum;
    A.push_back(std::move(r));
    b.push_back(rhs_val - off);
  };
  for (std::size_t i = 0; i < lp.rows.size(); ++i) push_transformed(lp.rows[i], lp.rhs[i]);
  for (int j = 0; j < n; ++j) {
    if (!lp.upper[j]) continue;
    std::vector<double> row(n, 0.0);
    row[j] = 1.0;
    push_transformed(row, *lp.upper[j]);
  }
  // A constant objective offset from the shifts does not move the argmax, so
  // it is dropped here and the value recomputed from x below.
  std::vector<double> c(nn, 0.0);
  double free_obj = 0.0;
  for (int j = 0; j < n; ++j) {
    c[j] = lp.objective[j];
    if (!lp.lower[j]) free_obj += lp.objective[j];
  }
  if (has_free) c[sub] = -free_obj;

  std::vector<double> y;
  double value = DictSimplex(A, b, c).run(y);
  Solution out;
  if (value == -kInf) {
    out.status = Status::infeasible;
    return out;
  }
  if (value == kInf) {
    out.status = Status::unbounded;
    return out;
  }
  out.status = Status::optimal;
  out.x.resize(n);
  const double y0 = has_free ? y[sub] : 0.0;
  for (int j = 0; j < n; ++j) out.x[j] = lp.lower[j] ? y[j] + shift[j] : y[j] - y0;
  out.value = dot(lp.objective, out.x);

  RowSystem sys = all_rows(lp);
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    double resid = dot(sys.rows[i], out.x) - sys.rhs[i];
    if (resid > kFeasTol)
      fail(errc::lp_failure, "simplex returned an infeasible point (residual " +
                                 std::to_string(resid) + " on row " + std::to_string(i) + ")");
  }
  return out;
}

Solution enumerate_oracle(const LinearProgram& lp) {
  validate(lp);
  if (lp.num_vars > 10) fail(errc::precondition, "oracle limited to 10 variables");
  const int n = lp.num_vars;
  RowSystem sys = all_rows(lp);
  const int m = static_cast<int>(sys.rows.size());

  Solution best;
  best.status = Status::infeasible;
  auto consider = [&](const std::vector<double>& x) {
    if (!feasible_point(sys, x, kFeasTol)) return;
    double v = dot(lp.objective, x);
    if (best.status != Status::optimal || v > best.value) {
      best.status = Status::optimal;
      best.value = v;
      best.x = x;
    }
  };
  for_each_subset(m, n, [&](const std::vector<int>& pick) {
    std::vector<std::vector<double>> M;
    std::vector<double> v;
    for (int i : pick) {
      M.push_back(sys.rows[i]);
      v.push_back(sys.rhs[i]);
    }
    if (auto x = solve_square(std::move(M), std::move(v))) consider(*x);
  });

  bool region_nonempty = best.status == Status::optimal;
  if (!region_nonempty) {
    // No vertex among the given constraints; re-check feasibility with a huge
    // box added so a nonempty region (possibly containing lines) still shows
    // a basic feasible point.
    LinearProgram boxed = lp;
    for (int j = 0; j < n; ++j) {
      if (!boxed.lower[j]) boxed.lower[j] = -1e7;
      if (!boxed.upper[j]) boxed.upper[j] = 1e7;
    }
    RowSystem bsys = all_rows(boxed);
    const int bm = static_cast<int>(bsys.rows.size());
    for_each_subset(bm, n, [&](const std::vector<int>& pick) {
      if (region_nonempty) return;
      std::vector<std::vector<double>> M;
      std::vector<double> v;
      for (int i : pick) {
        M.push_back(bsys.rows[i]);
        v.push_back(bsys.rhs[i]);
      }
      if (auto x = solve_square(std::move(M), std::move(v))) {
        if (feasible_point(sys, *x, kFeasTol)) {
          region_nonempty = true;
          best.status = Status::optimal;
          best.value = dot(lp.objective, *x);
          best.x = *x;
        }
      }
    });
    if (!region_nonempty) return best;  // infeasible
  }

  // Feasible directions: a recession direction d with A d <= 0 and c.d > 0
  // witnesses unboundedness from any feasible point. Extreme rays lie on
  // n-1 active constraints; axis directions and the objective itself cover
  // the unconstrained cases.
  auto improving_ray = [&](const std::vector<double>& d) {
    double gain = dot(lp.objective, d);
    if (gain <= 1e-7) return false;
    for (int i = 0; i < m; ++i)
      if (dot(sys.rows[i], d) > kFeasTol) return false;
    return true;
  };
  std::vector<std::vector<double>> candidates;
  for (int j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    candidates.push_back(e);
    e[j] = -1.0;
    candidates.push_back(e);
  }
  candidates.push_back(lp.objective);
  if (n >= 2) {
    for_each_subset(m, n - 1, [&](const std::vector<int>& pick) {
      std::vector<std::vector<double>> M;
      for (int i : pick) M.push_back(sys.rows[i]);
      if (auto d = nullspace_dir(std::move(M), n)) {
        candidates.push_back(*d);
        std::vector<double> neg = *d;
        for (double& v : neg) v = -v;
        candidates.push_back(std::move(neg));
      }
    });
  }
  for (const auto& d : candidates) {
    if (improving_ray(d)) {
      Solution out;
      out.status = Status::unbounded;
      return out;
    }
  }
  return best;
}

}  // namespace margdist::lp
