// Command-line front end. Everything below talks to the library exclusively
// through the C API in margdist.h, the same surface other language bindings
// would use.

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "margdist.h"

namespace {

// Exit codes: 0 success, 1 a verification suite found a violation, 2 bad
// input or configuration, 3 solver or internal failure.
int exit_code_for(md_status st) {
  switch (st) {
    case MD_OK:
      return 0;
    case MD_ERR_LP:
    case MD_ERR_INTERNAL:
      return 3;
    default:
      return 2;
  }
}

int report_failure(const char* during, md_status st) {
  std::cerr << "error (" << during << "): " << md_last_error() << "\n";
  return exit_code_for(st);
}

struct StringOut {
  char* s = nullptr;
  ~StringOut() { md_string_free(s); }
};

struct MeasureOut {
  md_measure* m = nullptr;
  ~MeasureOut() { md_measure_free(m); }
};

struct StepOut {
  md_stepfn* g = nullptr;
  ~StepOut() { md_stepfn_free(g); }
};

struct CopulaOut {
  md_copula* c = nullptr;
  ~CopulaOut() { md_copula_free(c); }
};

bool parse_p(const std::string& text, double* out) {
  std::string t = text;
  for (char& c : t) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "inf" || t == "infinity") {
    *out = std::numeric_limits<double>::infinity();
    return true;
  }
  try {
    std::size_t pos = 0;
    const double v = std::stod(t, &pos);
    if (pos != t.size() || !(v >= 1.0)) return false;
    *out = v;
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

int write_output(const std::string& path, const std::string& text) {
  std::string body = text;
  if (body.empty() || body.back() != '\n') body.push_back('\n');
  if (path.empty()) {
    std::cout << body;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file: " << path << "\n";
    return 2;
  }
  out << body;
  out.flush();
  if (!out) {
    std::cerr << "error: write failed: " << path << "\n";
    return 2;
  }
  return 0;
}

int load_measure(const std::string& path, MeasureOut* out) {
  const md_status st = md_measure_from_file(path.c_str(), &out->m);
  if (st != MD_OK) return report_failure(("loading " + path).c_str(), st);
  return 0;
}

int load_stepfn(const std::string& path, StepOut* out) {
  const md_status st = md_stepfn_from_file(path.c_str(), &out->g);
  if (st != MD_OK) return report_failure(("loading " + path).c_str(), st);
  return 0;
}

int run_metrics(const std::string& p_file, const std::string& q_file,
                const std::string& p_text, const std::string& out_path,
                const std::string& copulas_out) {
  double p_order = 1.0;
  if (!parse_p(p_text, &p_order)) {
    std::cerr << "error: --p must be a number >= 1 or 'inf'\n";
    return 2;
  }
  MeasureOut p, q;
  if (int rc = load_measure(p_file, &p)) return rc;
  if (int rc = load_measure(q_file, &q)) return rc;
  StringOut report;
  md_status st = md_metrics_report(p.m, q.m, p_order, &report.s);
  if (st != MD_OK) return report_failure("metrics", st);
  if (!copulas_out.empty()) {
    CopulaOut cp, cq;
    st = md_to_copula(p.m, &cp.c);
    if (st != MD_OK) return report_failure("copula of P", st);
    st = md_to_copula(q.m, &cq.c);
    if (st != MD_OK) return report_failure("copula of Q", st);
    StringOut jp, jq;
    st = md_copula_to_json(cp.c, &jp.s);
    if (st != MD_OK) return report_failure("copula of P", st);
    st = md_copula_to_json(cq.c, &jq.s);
    if (st != MD_OK) return report_failure("copula of Q", st);
    const std::string combined =
        std::string("{\n\"P\": ") + jp.s + ",\n\"Q\": " + jq.s + "\n}";
    if (int rc = write_output(copulas_out, combined)) return rc;
  }
  return write_output(out_path, report.s);
}

int run_verify(const std::string& suite, int trials, std::uint64_t seed,
               const std::vector<int>& dims, int max_support,
               const std::vector<std::string>& p_texts, double tol,
               const std::string& out_path) {
  if (trials < 1) {
    std::cerr << "error: --trials must be at least 1\n";
    return 2;
  }
  std::vector<double> ps;
  for (const auto& t : p_texts) {
    double v = 0.0;
    if (!parse_p(t, &v)) {
      std::cerr << "error: --p must be a number >= 1 or 'inf'\n";
      return 2;
    }
    ps.push_back(v);
  }
  int all_passed = 0;
  StringOut report;
  const md_status st = md_verify_suite(
      suite.c_str(), trials, seed, dims.empty() ? nullptr : dims.data(), dims.size(),
      max_support, ps.empty() ? nullptr : ps.data(), ps.size(), tol, &all_passed,
      &report.s);
  if (st != MD_OK) return report_failure(("verify-" + suite).c_str(), st);
  if (int rc = write_output(out_path, report.s)) return rc;
  return all_passed ? 0 : 1;
}

int run_cov_bounds(const std::string& j_file, const std::string& gy_file,
                   const std::string& gz_file, const std::string& p_text,
                   const std::string& out_path) {
  double p_order = 1.0;
  if (!parse_p(p_text, &p_order)) {
    std::cerr << "error: --p must be a number >= 1 or 'inf'\n";
    return 2;
  }
  if (p_order != 1.0) {
    // The report's distance-driven bound is derived for the l1 ground
    // distance; other orders shrink the distance and would overstate the
    // certified region.
    std::cerr << "error: cov-bounds supports only --p 1\n";
    return 2;
  }
  MeasureOut joint;
  if (int rc = load_measure(j_file, &joint)) return rc;
  StepOut gy, gz;
  if (int rc = load_stepfn(gy_file, &gy)) return rc;
  if (int rc = load_stepfn(gz_file, &gz)) return rc;
  StringOut report;
  const md_status st = md_cov_bounds_report(joint.m, gy.g, gz.g, &report.s);
  if (st != MD_OK) return report_failure("cov-bounds", st);
  return write_output(out_path, report.s);
}

int run_lp_selftest(int trials, std::uint64_t seed, double tol,
                    const std::string& out_path) {
  if (trials < 1) {
    std::cerr << "error: --trials must be at least 1\n";
    return 2;
  }
  int all_passed = 0;
  StringOut report;
  const md_status st = md_lp_selftest(trials, seed, tol, &all_passed, &report.s);
  if (st != MD_OK) return report_failure("lp-selftest", st);
  if (int rc = write_output(out_path, report.s)) return rc;
  return all_passed ? 0 : 1;
}

int run_linear_process(double rho, const std::vector<double>& coeffs, bool has_coeffs,
                       const std::string& innovation, int truncation,
                       const std::vector<int>& lags, std::size_t samples,
                       std::uint64_t seed, const std::string& out_path) {
  for (int lag : lags) {
    if (lag < 1) {
      std::cerr << "error: lags must be at least 1\n";
      return 2;
    }
  }
  StringOut csv;
  const md_status st = md_linear_process_report(
      rho, has_coeffs ? coeffs.data() : nullptr, coeffs.size(), innovation.c_str(),
      truncation, lags.data(), lags.size(), samples, seed, &csv.s);
  if (st != MD_OK) return report_failure("linear-process", st);
  std::cerr << "config: innovation=" << innovation;
  if (has_coeffs) {
    std::cerr << " coeffs=";
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      std::cerr << (i ? "," : "") << coeffs[i];
  } else {
    std::cerr << " rho=" << rho << " truncation=" << truncation;
  }
  std::cerr << " samples=" << samples << " seed=" << seed << "\n";
  return write_output(out_path, csv.s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probability metrics, copulas, and covariance bounds for discrete "
               "multivariate laws"};
  app.require_subcommand(1);

  const std::uint64_t default_seed = 42424242ULL;

  // metrics
  std::string m_p_file, m_q_file, m_p = "1", m_out, m_copulas_out;
  auto* metrics = app.add_subcommand(
      "metrics", "Distances between two measures plus the optimal test function");
  metrics->add_option("P", m_p_file, "first measure file (JSON or CSV)")->required();
  metrics->add_option("Q", m_q_file, "second measure file (JSON or CSV)")->required();
  metrics->add_option("--p", m_p, "ground-distance order (>= 1 or 'inf')");
  metrics->add_option("--out", m_out, "output path (default: stdout)");
  metrics->add_option("--copulas-out", m_copulas_out,
                      "also write both rectangle-mixture copulas to this file");

  // verify-theorem2 / verify-cor1
  struct VerifyFlags {
    int trials = 200;
    std::uint64_t seed = default_seed;
    std::vector<int> dims;
    int max_support = 6;
    std::vector<std::string> ps;
    double tol = 1e-9;
    std::string out;
  };
  VerifyFlags vt, vc;
  auto add_verify_flags = [](CLI::App* cmd, VerifyFlags* f) {
    cmd->add_option("--trials", f->trials, "number of random instances");
    cmd->add_option("--seed", f->seed, "master seed");
    cmd->add_option("--K", f->dims, "dimensions to cycle through (default 2 3)");
    cmd->add_option("--n", f->max_support, "max atoms per measure");
    cmd->add_option("--p", f->ps, "ground-distance orders (default 1 2 inf)");
    cmd->add_option("--tol", f->tol, "pass tolerance");
    cmd->add_option("--out", f->out, "output path (default: stdout)");
  };
  auto* verify_t2 = app.add_subcommand(
      "verify-theorem2",
      "Random-instance check that the square-root bridge bound dominates the "
      "monotone-class distance");
  add_verify_flags(verify_t2, &vt);
  auto* verify_c1 = app.add_subcommand(
      "verify-cor1",
      "Random-instance check of the product-quantile integral bound");
  add_verify_flags(verify_c1, &vc);

  // cov-bounds
  std::string cb_j, cb_gy, cb_gz, cb_p = "1", cb_out;
  auto* cov = app.add_subcommand(
      "cov-bounds", "Covariance of two monotone transforms against its bounds");
  cov->add_option("J", cb_j, "2-D joint measure file")->required();
  cov->add_option("GY", cb_gy, "step function applied to the first coordinate")->required();
  cov->add_option("GZ", cb_gz, "step function applied to the second coordinate")->required();
  cov->add_option("--p", cb_p, "ground-distance order (only 1 is supported)");
  cov->add_option("--out", cb_out, "output path (default: stdout)");

  // linear-process
  double lp_rho = 0.5;
  std::vector<double> lp_coeffs;
  std::string lp_innovation = "normal";
  int lp_truncation = 64;
  std::vector<int> lp_lags = {1, 2, 3, 4, 5, 6, 7, 8};
  std::size_t lp_samples = 20000;
  std::uint64_t lp_seed = default_seed;
  std::string lp_out;
  auto* linproc = app.add_subcommand(
      "linear-process",
      "Coupled moving-average experiment: empirical coupling cost and distances "
      "per lag");
  auto* rho_opt = linproc->add_option("--rho", lp_rho, "geometric coefficient rho^s");
  auto* coeff_opt =
      linproc->add_option("--coeffs", lp_coeffs, "explicit coefficients a0 a1 ...");
  rho_opt->excludes(coeff_opt);
  linproc->add_option("--innovation", lp_innovation,
                      "innovation law: normal, uniform, rademacher");
  linproc->add_option("--truncation", lp_truncation, "series truncation index");
  linproc->add_option("--lags", lp_lags, "lags to evaluate");
  linproc->add_option("--samples", lp_samples, "draws per lag");
  linproc->add_option("--seed", lp_seed, "master seed");
  linproc->add_option("--out", lp_out, "output path (default: stdout)");

  // lp-selftest
  int st_trials = 200;
  std::uint64_t st_seed = default_seed;
  double st_tol = 1e-7;
  std::string st_out;
  auto* selftest = app.add_subcommand(
      "lp-selftest", "Simplex vs enumeration oracle on random small programs");
  selftest->add_option("--trials", st_trials, "number of random programs");
  selftest->add_option("--seed", st_seed, "master seed");
  selftest->add_option("--tol", st_tol, "agreement tolerance");
  selftest->add_option("--out", st_out, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (metrics->parsed()) return run_metrics(m_p_file, m_q_file, m_p, m_out, m_copulas_out);
  if (verify_t2->parsed())
    return run_verify("theorem2", vt.trials, vt.seed, vt.dims, vt.max_support, vt.ps,
                      vt.tol, vt.out);
  if (verify_c1->parsed())
    return run_verify("cor1", vc.trials, vc.seed, vc.dims, vc.max_support, vc.ps,
                      vc.tol, vc.out);
  if (cov->parsed()) return run_cov_bounds(cb_j, cb_gy, cb_gz, cb_p, cb_out);
  if (linproc->parsed())
    return run_linear_process(lp_rho, lp_coeffs, !lp_coeffs.empty(), lp_innovation,
                              lp_truncation, lp_lags, lp_samples, lp_seed, lp_out);
  if (selftest->parsed()) return run_lp_selftest(st_trials, st_seed, st_tol, st_out);
  std::cerr << "error: no subcommand selected\n";
  return 2;
}
