#include "margdist.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>
#include <utility>

#include "json.hpp"
#include "margdist/inequalities.hpp"
#include "margdist/io.hpp"
#include "margdist/measure.hpp"
#include "margdist/metrics.hpp"
#include "margdist/processes.hpp"
#include "margdist/suites.hpp"
#include "margdist/transform.hpp"

struct md_measure {
  margdist::DiscreteMeasure v;
};
struct md_copula {
  margdist::RectMixture v;
};
struct md_stepfn {
  margdist::MonotoneStep v;
};

namespace {

thread_local std::string g_last_error = "no error";

void set_error(const std::string& msg) { g_last_error = msg; }

md_status map_code(margdist::errc code) {
  switch (code) {
    case margdist::errc::invalid_argument:
      return MD_ERR_INVALID_ARGUMENT;
    case margdist::errc::dimension_mismatch:
      return MD_ERR_DIMENSION;
    case margdist::errc::precondition:
      return MD_ERR_PRECONDITION;
    case margdist::errc::parse:
      return MD_ERR_PARSE;
    case margdist::errc::lp_failure:
      return MD_ERR_LP;
    case margdist::errc::io:
      return MD_ERR_IO;
  }
  return MD_ERR_INTERNAL;
}

template <class F>
md_status guarded(F&& body) {
  try {
    body();
    return MD_OK;
  } catch (const margdist::error& e) {
    set_error(e.what());
    return map_code(e.code());
  } catch (const std::exception& e) {
    set_error(e.what());
    return MD_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown failure");
    return MD_ERR_INTERNAL;
  }
}

md_status arg_error(const char* msg) {
  set_error(msg);
  return MD_ERR_INVALID_ARGUMENT;
}

char* to_c_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit_string(const std::string& s, char** out) {
  char* c = to_c_string(s);
  if (c == nullptr) throw std::bad_alloc();
  *out = c;
}

nlohmann::json p_json(double p) {
  if (std::isinf(p)) return nlohmann::json("inf");
  return nlohmann::json(p);
}

}  // namespace

extern "C" {

const char* md_last_error(void) { return g_last_error.c_str(); }

const char* md_version(void) { return "0.1.0"; }

void md_string_free(char* s) { std::free(s); }

/* ---- measures ---- */

md_status md_measure_create(int dim, const double* coords, const double* weights,
                            size_t n, md_measure** out) {
  if (out == nullptr || coords == nullptr) return arg_error("null pointer argument");
  if (dim < 1) return arg_error("dimension must be positive");
  return guarded([&] {
    std::vector<std::vector<double>> pts(n, std::vector<double>(static_cast<size_t>(dim)));
    for (size_t i = 0; i < n; ++i)
      for (int k = 0; k < dim; ++k)
        pts[i][static_cast<size_t>(k)] = coords[i * static_cast<size_t>(dim) + static_cast<size_t>(k)];
    auto m = weights == nullptr
                 ? margdist::DiscreteMeasure::uniform(pts)
                 : margdist::DiscreteMeasure::make(pts, std::vector<double>(weights, weights + n));
    *out = new md_measure{std::move(m)};
  });
}

md_status md_measure_from_json(const char* text, md_measure** out) {
  if (out == nullptr || text == nullptr) return arg_error("null pointer argument");
  return guarded([&] { *out = new md_measure{margdist::measure_from_json(text)}; });
}

md_status md_measure_from_file(const char* path, md_measure** out) {
  if (out == nullptr || path == nullptr) return arg_error("null pointer argument");
  return guarded([&] { *out = new md_measure{margdist::measure_from_file(path)}; });
}

void md_measure_free(md_measure* m) { delete m; }

int md_measure_dim(const md_measure* m) { return m == nullptr ? 0 : m->v.dim(); }

size_t md_measure_size(const md_measure* m) { return m == nullptr ? 0 : m->v.size(); }

md_status md_measure_atom(const md_measure* m, size_t i, double* coords_out,
                          double* weight_out) {
  if (m == nullptr) return arg_error("null measure");
  if (i >= m->v.size()) return arg_error("atom index out of range");
  auto a = m->v.atom(i);
  if (coords_out != nullptr)
    std::memcpy(coords_out, a.data(), a.size() * sizeof(double));
  if (weight_out != nullptr) *weight_out = m->v.weight(i);
  return MD_OK;
}

md_status md_measure_to_json(const md_measure* m, char** json_out) {
  if (m == nullptr || json_out == nullptr) return arg_error("null pointer argument");
  return guarded([&] {
    emit_string(margdist::measure_to_json(m->v), json_out);
  });
}

md_status md_measure_marginal(const md_measure* m, int k, md_measure** out) {
  if (m == nullptr || out == nullptr) return arg_error("null pointer argument");
  return guarded([&] { *out = new md_measure{m->v.marginal(k)}; });
}

md_status md_measure_product_of_marginals(const md_measure* m, md_measure** out) {
  if (m == nullptr || out == nullptr) return arg_error("null pointer argument");
  return guarded([&] { *out = new md_measure{m->v.product_of_marginals()}; });
}

md_status md_common_marginals_check(const md_measure* p, const md_measure* q,
                                    double tol, int* out) {
  if (p == nullptr || q == nullptr || out == nullptr) return arg_error("null pointer argument");
  return guarded([&] { *out = margdist::common_marginals_check(p->v, q->v, tol) ? 1 : 0; });
}

md_status md_survival(const md_measure* m, const double* u, double* out) {
  if (m == nullptr || u == nullptr || out == nullptr) return arg_error("null pointer argument");
  return guarded([&] {
    *out = m->v.survival({u, static_cast<size_t>(m->v.dim())});
  });
}

md_status md_survival_sup_distance(const md_measure* p, const md_measure* q, double* out) {
  if (p == nullptr || q == nullptr || out == nullptr) return arg_error("null pointer argument");
  return guarded([&] { *out = margdist::survival_sup_distance(p->v, q->v); });
}

md_status md_random_common_marginal_pair(uint64_t seed, int dim, size_t n,
                                         md_measure** p_out, md_measure** q_out) {
  if (p_out == nullptr || q_out == nullptr) return arg_error("null pointer argument");
  return guarded([&] {
    auto [p, q] = margdist::random_common_marginal_pair(seed, dim, static_cast<int>(n));
    *p_out = new md_measure{std::move(p)};
    *q_out = new md_measure{std::move(q)};
  });
}

/* ---- distributional transform and copulas ---- */

md_status md_dtransform(const md_measure* p1, double x, double v, double* out) {
  if (p1 == nullptr || out == nullptr) return arg_error("null pointer argument");
  return guarded([&] { *out = margdist::dtransform(p1->v, x, v); });
}

md_status md_pseudo_inverse(const md_measure* p1, double u, double* out) {
  if (p1 == nullptr || out == nullptr) return arg_error("null pointer argument");
  return guarded([&] { *out = margdist::pseudo_inverse(p1->v, u); });
}

md_status md_to_copula(const md_measure* m, md_copula** out) {
  if (m == nullptr || out == nullptr) return arg_error("null pointer argument");
  return guarded([&] { *out = new md_copula{margdist::to_copula(m->v)}; });
}

void md_copula_free(md_copula* c) { delete c; }

md_status md_copula_cdf(const md_copula* c, const double* u, double* out) {
  if (c == nullptr || u == nullptr || out == nullptr) return arg_error("null pointer argument");
  return guarded([&] {
    *out = margdist::copula_cdf(c->v, {u, static_cast<size_t>(c->v.dim())});
  });
}

md_status md_survival_copula(const md_copula* c, const double* u, double* out) {
  if (c == nullptr || u == nullptr || out == nullptr) return arg_error("null pointer argument");
  return guarded([&] {
    *out = margdist::survival_copula(c->v, {u, static_cast<size_t>(c->v.dim())});
  });
}

md_status md_copula_sup_distance(const md_copula* c, const md_copula* d, double* out) {
  if (c == nullptr || d == nullptr || out == nullptr) return arg_error("null pointer argument");
  return guarded([&] { *out = margdist::copula_sup_distance(c->v, d->v); });
}

md_status md_copula_to_json(const md_copula* c, char** json_out) {
  if (c == nullptr || json_out == nullptr) return arg_error("null pointer argument");
  return guarded([&] {
    emit_string(margdist::rect_mixture_to_json(c->v), json_out);
  });
}

md_status md_push_back(const md_copula* c, const md_measure* const* marginals,
                       size_t k, md_measure** out) {
  if (c == nullptr || marginals == nullptr || out == nullptr)
    return arg_error("null pointer argument");
  return guarded([&] {
    std::vector<margdist::DiscreteMeasure> ms;
    ms.reserve(k);
    for (size_t i = 0; i < k; ++i) {
      if (marginals[i] == nullptr)
        margdist::fail(margdist::errc::invalid_argument, "null marginal handle");
      ms.push_back(marginals[i]->v);
    }
    *out = new md_measure{margdist::push_back(c->v, ms)};
  });
}

md_status md_copula_uniform_marginal_error(const md_copula* c, int grid_points,
                                           double* out) {
  if (c == nullptr || out == nullptr) return arg_error("null pointer argument");
  return guarded([&] { *out = margdist::max_uniform_marginal_error(c->v, grid_points); });
}

/* ---- step functions ---- */

md_status md_stepfn_create(const double* breaks, size_t nbreaks, const double* values,
                           size_t nvalues, md_stepfn** out) {
  if (out == nullptr || values == nullptr || (breaks == nullptr && nbreaks > 0))
    return arg_error("null pointer argument");
  return guarded([&] {
    *out = new md_stepfn{margdist::MonotoneStep::make(
        std::vector<double>(breaks, breaks + nbreaks),
        std::vector<double>(values, values + nvalues))};
  });
}

md_status md_stepfn_identity(md_stepfn** out) {
  if (out == nullptr) return arg_error("null pointer argument");
  return guarded([&] { *out = new md_stepfn{margdist::MonotoneStep::identity()}; });
}

md_status md_stepfn_from_json(const char* text, md_stepfn** out) {
  if (text == nullptr || out == nullptr) return arg_error("null pointer argument");
  return guarded([&] { *out = new md_stepfn{margdist::stepfn_from_json(text)}; });
}

md_status md_stepfn_from_file(const char* path, md_stepfn** out) {
  if (path == nullptr || out == nullptr) return arg_error("null pointer argument");
  return guarded([&] { *out = new md_stepfn{margdist::stepfn_from_file(path)}; });
}

void md_stepfn_free(md_stepfn* g) { delete g; }

md_status md_stepfn_eval(const md_stepfn* g, double x, double* out) {
  if (g == nullptr || out == nullptr) return arg_error("null pointer argument");
  return guarded([&] { *out = g->v(x); });
}

/* ---- metrics ---- */

md_status md_m1_distance(const md_measure* p, const md_measure* q, double* out) {
  if (p == nullptr || q == nullptr || out == nullptr) return arg_error("null pointer argument");
  return guarded([&] { *out = margdist::m1_distance(p->v, q->v); });
}

md_status md_bl1_distance(const md_measure* p, const md_measure* q, double p_order,
                          double* value, double* c0, double* c1) {
  if (p == nullptr || q == nullptr || value == nullptr)
    return arg_error("null pointer argument");
  return guarded([&] {
    const auto report = margdist::bl1_distance(p->v, q->v, margdist::MetricChoice(p_order));
    *value = report.value;
    if (c0 != nullptr) *c0 = report.sup_part;
    if (c1 != nullptr) *c1 = report.lip_part;
  });
}

md_status md_expected_pair_distance(const md_measure* pairs, double p_order, double* out) {
  if (pairs == nullptr || out == nullptr) return arg_error("null pointer argument");
  return guarded([&] {
    const auto& base = pairs->v;
    if (base.dim() % 2 != 0)
      margdist::fail(margdist::errc::dimension_mismatch,
                     "pair law must have even dimension");
    const int half = base.dim() / 2;
    const margdist::MetricChoice metric(p_order);
    double total = 0.0;
    for (size_t i = 0; i < base.size(); ++i) {
      auto a = base.atom(i);
      total += base.weight(i) *
               metric(a.subspan(0, static_cast<size_t>(half)),
                      a.subspan(static_cast<size_t>(half), static_cast<size_t>(half)));
    }
    *out = total;
  });
}

md_status md_theorem2_bound(double d_bl, int dim, double p_order, double* out) {
  if (out == nullptr) return arg_error("null pointer argument");
  return guarded([&] {
    *out = margdist::theorem2_bound(d_bl, dim, margdist::MetricChoice(p_order));
  });
}

/* ---- covariance bounds ---- */

md_status md_alpha_coefficient(const md_measure* joint, double* out) {
  if (joint == nullptr || out == nullptr) return arg_error("null pointer argument");
  return guarded([&] { *out = margdist::alpha_coefficient(joint->v); });
}

md_status md_covariance(const md_measure* joint, const md_stepfn* g_y,
                        const md_stepfn* g_z, double* out) {
  if (joint == nullptr || g_y == nullptr || g_z == nullptr || out == nullptr)
    return arg_error("null pointer argument");
  return guarded([&] { *out = margdist::covariance(joint->v, g_y->v, g_z->v); });
}

md_status md_rio_bound(const md_measure* joint, const md_stepfn* g_y,
                       const md_stepfn* g_z, double* out) {
  if (joint == nullptr || g_y == nullptr || g_z == nullptr || out == nullptr)
    return arg_error("null pointer argument");
  return guarded([&] { *out = margdist::rio_bound(joint->v, g_y->v, g_z->v); });
}

md_status md_corollary1_bound(const md_measure* p, const md_measure* q,
                              const md_stepfn* const* gs, size_t k, double* out) {
  if (p == nullptr || q == nullptr || gs == nullptr || out == nullptr)
    return arg_error("null pointer argument");
  return guarded([&] {
    std::vector<margdist::MonotoneStep> steps;
    steps.reserve(k);
    for (size_t i = 0; i < k; ++i) {
      if (gs[i] == nullptr)
        margdist::fail(margdist::errc::invalid_argument, "null step-function handle");
      steps.push_back(gs[i]->v);
    }
    *out = margdist::corollary1_bound(p->v, q->v, steps);
  });
}

md_status md_corollary2_bound(const md_measure* joint, const md_stepfn* g_y,
                              const md_stepfn* g_z, double d_bl, double* out) {
  if (joint == nullptr || g_y == nullptr || g_z == nullptr || out == nullptr)
    return arg_error("null pointer argument");
  return guarded([&] { *out = margdist::corollary2_bound(joint->v, g_y->v, g_z->v, d_bl); });
}

/* ---- reports ---- */

md_status md_metrics_report(const md_measure* p, const md_measure* q, double p_order,
                            char** json_out) {
  if (p == nullptr || q == nullptr || json_out == nullptr)
    return arg_error("null pointer argument");
  return guarded([&] {
    const margdist::MetricChoice metric(p_order);
    const bool common = margdist::common_marginals_check(p->v, q->v, 1e-9);
    const auto bl = margdist::bl1_distance(p->v, q->v, metric);
    nlohmann::json j;
    j["p"] = p_json(p_order);
    j["marginals_common"] = common;
    if (common) {
      j["m1"] = margdist::m1_distance(p->v, q->v);
    } else {
      j["survival_sup"] = margdist::survival_sup_distance(p->v, q->v);
    }
    j["bl1"] = bl.value;
    j["c0"] = bl.sup_part;
    j["c1"] = bl.lip_part;
    j["theorem2_bound"] = margdist::theorem2_bound(bl.value, p->v.dim(), metric);
    nlohmann::json support = nlohmann::json::array();
    for (const auto& pt : bl.support) support.push_back(pt);
    j["witness"] = {{"support", std::move(support)}, {"values", bl.witness_values}};
    emit_string(j.dump(2), json_out);
  });
}

md_status md_cov_bounds_report(const md_measure* joint, const md_stepfn* g_y,
                               const md_stepfn* g_z, char** json_out) {
  if (joint == nullptr || g_y == nullptr || g_z == nullptr || json_out == nullptr)
    return arg_error("null pointer argument");
  return guarded([&] {
    const auto& j2 = joint->v;
    const auto product = j2.product_of_marginals();
    const double d_bl =
        margdist::bl1_distance(j2, product, margdist::MetricChoice::l1()).value;
    const double theta = 2.0 * std::min(std::sqrt(8.0 * d_bl), 1.0);
    nlohmann::json j = {
        {"cov", margdist::covariance(j2, g_y->v, g_z->v)},
        {"alpha", margdist::alpha_coefficient(j2)},
        {"rio_bound", margdist::rio_bound(j2, g_y->v, g_z->v)},
        {"cor2_bound", margdist::corollary2_bound(j2, g_y->v, g_z->v, d_bl)},
        {"d_bl", d_bl},
        {"theta", theta},
    };
    emit_string(j.dump(2), json_out);
  });
}

md_status md_verify_suite(const char* suite, int trials, uint64_t seed, const int* dims,
                          size_t ndims, int max_support, const double* ps, size_t nps,
                          double tol, int* all_passed, char** json_out) {
  if (suite == nullptr || json_out == nullptr) return arg_error("null pointer argument");
  return guarded([&] {
    margdist::suites::VerifyConfig cfg;
    cfg.trials = trials;
    cfg.seed = seed;
    if (dims != nullptr && ndims > 0) cfg.dims.assign(dims, dims + ndims);
    if (max_support >= 1) cfg.max_support = max_support;
    if (ps != nullptr && nps > 0) cfg.ps.assign(ps, ps + nps);
    if (tol > 0.0) cfg.tol = tol;
    const std::string name(suite);
    margdist::suites::VerifyReport report;
    if (name == "theorem2") {
      report = margdist::suites::run_theorem2_suite(cfg);
    } else if (name == "cor1") {
      report = margdist::suites::run_cor1_suite(cfg);
    } else {
      margdist::fail(margdist::errc::invalid_argument, "unknown suite: " + name);
    }
    if (all_passed != nullptr) *all_passed = report.all_passed() ? 1 : 0;
    emit_string(margdist::suites::report_to_json(report), json_out);
  });
}

md_status md_lp_selftest(int trials, uint64_t seed, double tol, int* all_passed,
                         char** json_out) {
  if (json_out == nullptr) return arg_error("null pointer argument");
  return guarded([&] {
    margdist::suites::VerifyConfig cfg;
    cfg.trials = trials;
    cfg.seed = seed;
    if (tol > 0.0) cfg.tol = tol;
    const auto report = margdist::suites::run_lp_selftest(cfg);
    if (all_passed != nullptr) *all_passed = report.all_passed() ? 1 : 0;
    emit_string(margdist::suites::report_to_json(report), json_out);
  });
}

md_status md_linear_process_report(double rho, const double* coeffs, size_t ncoeffs,
                                   const char* innovation, int truncation,
                                   const int* lags, size_t nlags, size_t samples,
                                   uint64_t seed, char** csv_out) {
  if (innovation == nullptr || lags == nullptr || csv_out == nullptr)
    return arg_error("null pointer argument");
  return guarded([&] {
    margdist::Innovation inn;
    const std::string name(innovation);
    if (name == "normal") {
      inn = margdist::Innovation::normal;
    } else if (name == "uniform") {
      inn = margdist::Innovation::uniform_pm1;
    } else if (name == "rademacher") {
      inn = margdist::Innovation::rademacher;
    } else {
      margdist::fail(margdist::errc::invalid_argument, "unknown innovation: " + name);
    }
    const auto spec = coeffs == nullptr
                          ? margdist::LinearProcessSpec::geometric(rho, inn, truncation)
                          : margdist::LinearProcessSpec::from_coefficients(
                                std::vector<double>(coeffs, coeffs + ncoeffs), inn);
    const auto rows = margdist::decay_experiment(
        spec, std::vector<int>(lags, lags + nlags), samples, seed);
    std::ostringstream out;
    out << "n,coupling_bound_emp,coupling_bound_se,analytic_bound,survival_sup,"
           "theorem2_of_coupling\n";
    char buf[512];
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.lag,
                    r.coupling_bound_emp, r.coupling_bound_se, r.analytic_bound,
                    r.survival_sup, r.theorem2_of_coupling);
      out << buf;
    }
    emit_string(out.str(), csv_out);
  });
}

} /* extern "C" */
