#ifndef MARGDIST_H
#define MARGDIST_H

/* C interface to the margdist library: discrete multivariate laws, their
 * rectangle-mixture copulas, probability metrics, covariance bounds, and the
 * coupled linear-process experiment.
 *
 * All objects are opaque handles created and destroyed by this API. Functions
 * return MD_OK on success; on any other status the out-parameters are left
 * untouched and md_last_error() describes the failure for the calling thread.
 * Strings returned through char** out-parameters are heap-allocated and must
 * be released with md_string_free(). The metric order p is a double >= 1;
 * pass INFINITY (or HUGE_VAL) for the max-coordinate metric.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct md_measure md_measure;
typedef struct md_copula md_copula;
typedef struct md_stepfn md_stepfn;

typedef enum md_status {
  MD_OK = 0,
  MD_ERR_INVALID_ARGUMENT = 1,
  MD_ERR_DIMENSION = 2,
  MD_ERR_PRECONDITION = 3,
  MD_ERR_PARSE = 4,
  MD_ERR_LP = 5,
  MD_ERR_IO = 6,
  MD_ERR_INTERNAL = 7
} md_status;

/* Message for the most recent failing call on this thread; never NULL. */
const char* md_last_error(void);
const char* md_version(void);
void md_string_free(char* s);

/* ---- measures ---- */

/* coords holds n atoms of dim doubles each, row-major; weights may be NULL
 * for the uniform law on the given atoms. */
md_status md_measure_create(int dim, const double* coords, const double* weights,
                            size_t n, md_measure** out);
md_status md_measure_from_json(const char* text, md_measure** out);
/* Dispatches on the file extension: ".csv" reads CSV, anything else JSON. */
md_status md_measure_from_file(const char* path, md_measure** out);
void md_measure_free(md_measure* m);

int md_measure_dim(const md_measure* m);
size_t md_measure_size(const md_measure* m);
/* coords_out receives dim doubles; either out pointer may be NULL. */
md_status md_measure_atom(const md_measure* m, size_t i, double* coords_out,
                          double* weight_out);
md_status md_measure_to_json(const md_measure* m, char** json_out);

/* k is 1-based. */
md_status md_measure_marginal(const md_measure* m, int k, md_measure** out);
md_status md_measure_product_of_marginals(const md_measure* m, md_measure** out);
md_status md_common_marginals_check(const md_measure* p, const md_measure* q,
                                    double tol, int* out);
md_status md_survival(const md_measure* m, const double* u, double* out);
md_status md_survival_sup_distance(const md_measure* p, const md_measure* q, double* out);
md_status md_random_common_marginal_pair(uint64_t seed, int dim, size_t n,
                                         md_measure** p_out, md_measure** q_out);

/* ---- distributional transform and copulas ---- */

md_status md_dtransform(const md_measure* p1, double x, double v, double* out);
md_status md_pseudo_inverse(const md_measure* p1, double u, double* out);

md_status md_to_copula(const md_measure* m, md_copula** out);
void md_copula_free(md_copula* c);
md_status md_copula_cdf(const md_copula* c, const double* u, double* out);
md_status md_survival_copula(const md_copula* c, const double* u, double* out);
md_status md_copula_sup_distance(const md_copula* c, const md_copula* d, double* out);
md_status md_copula_to_json(const md_copula* c, char** json_out);
/* marginals is an array of k 1-D measures, one per axis of c. */
md_status md_push_back(const md_copula* c, const md_measure* const* marginals,
                       size_t k, md_measure** out);
md_status md_copula_uniform_marginal_error(const md_copula* c, int grid_points,
                                           double* out);

/* ---- step functions ---- */

/* nvalues must equal nbreaks + 1; values nondecreasing. */
md_status md_stepfn_create(const double* breaks, size_t nbreaks, const double* values,
                           size_t nvalues, md_stepfn** out);
md_status md_stepfn_identity(md_stepfn** out);
md_status md_stepfn_from_json(const char* text, md_stepfn** out);
md_status md_stepfn_from_file(const char* path, md_stepfn** out);
void md_stepfn_free(md_stepfn* g);
md_status md_stepfn_eval(const md_stepfn* g, double x, double* out);

/* ---- metrics ---- */

md_status md_m1_distance(const md_measure* p, const md_measure* q, double* out);
/* c0/c1 receive the sup and Lipschitz budget of the optimal test function;
 * either may be NULL. */
md_status md_bl1_distance(const md_measure* p, const md_measure* q, double p_order,
                          double* value, double* c0, double* c1);
/* pairs is a 2K-dimensional law of (x, x'); returns E r_p(x, x'). */
md_status md_expected_pair_distance(const md_measure* pairs, double p_order, double* out);
md_status md_theorem2_bound(double d_bl, int dim, double p_order, double* out);

/* ---- covariance bounds ---- */

md_status md_alpha_coefficient(const md_measure* joint, double* out);
md_status md_covariance(const md_measure* joint, const md_stepfn* g_y,
                        const md_stepfn* g_z, double* out);
md_status md_rio_bound(const md_measure* joint, const md_stepfn* g_y,
                       const md_stepfn* g_z, double* out);
md_status md_corollary1_bound(const md_measure* p, const md_measure* q,
                              const md_stepfn* const* gs, size_t k, double* out);
md_status md_corollary2_bound(const md_measure* joint, const md_stepfn* g_y,
                              const md_stepfn* g_z, double d_bl, double* out);

/* ---- reports (JSON / CSV strings) ---- */

md_status md_metrics_report(const md_measure* p, const md_measure* q, double p_order,
                            char** json_out);
md_status md_cov_bounds_report(const md_measure* joint, const md_stepfn* g_y,
                               const md_stepfn* g_z, char** json_out);

/* suite is "theorem2" or "cor1". dims/ps may be NULL to keep the defaults
 * ({2,3} and {1,2,inf}); all_passed may be NULL. */
md_status md_verify_suite(const char* suite, int trials, uint64_t seed, const int* dims,
                          size_t ndims, int max_support, const double* ps, size_t nps,
                          double tol, int* all_passed, char** json_out);
md_status md_lp_selftest(int trials, uint64_t seed, double tol, int* all_passed,
                         char** json_out);

/* Geometric coefficients rho^s when coeffs is NULL, otherwise the explicit
 * list a_0..a_{ncoeffs-1}; innovation is "normal", "uniform", or
 * "rademacher". Emits one CSV row per lag. */
md_status md_linear_process_report(double rho, const double* coeffs, size_t ncoeffs,
                                   const char* innovation, int truncation,
                                   const int* lags, size_t nlags, size_t samples,
                                   uint64_t seed, char** csv_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MARGDIST_H */
