#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "heinz/errors.hpp"
#include "heinz/inequality_suite.hpp"
#include "heinz/interpolation_optimizer.hpp"
#include "heinz/report.hpp"
#include "heinz/scalar_means.hpp"

namespace heinz {

struct CliConfig {
  std::string suite = "all";  // scalar | matrix | all
  std::uint64_t seed = 0xC0FFEE;
  int trials = 500;
  int dim_lo = 2;
  int dim_hi = 6;
  double tol = -1.0;  // negative keeps per-suite defaults
  std::string json_path;
  std::string csv_path;
  double a = 0.0;
  double b = 0.0;
  double tau = 0.0;
  int steps = 0;
  std::vector<double> confirm_b;
  double quad_tol = 1e-10;
};

namespace detail {

// Output is assembled fully before any byte is written, so a failed run or
// an unwritable path never leaves a truncated file behind.
inline bool emit(const std::string& text, const std::string& path,
                 std::ostream& out, std::ostream& diag) {
  if (path.empty()) {
    out << text;
    return true;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    diag << "error: cannot open " << path << " for writing\n";
    return false;
  }
  file << text;
  file.flush();
  if (!file) {
    diag << "error: write to " << path << " failed\n";
    return false;
  }
  return true;
}

}  // namespace detail

inline int cmd_verify(const CliConfig& cfg, std::ostream& out,
                      std::ostream& diag) {
  std::vector<SuiteConfig::Kind> kinds;
  if (cfg.suite == "scalar") {
    kinds = {SuiteConfig::Kind::Scalar};
  } else if (cfg.suite == "matrix") {
    kinds = {SuiteConfig::Kind::Matrix};
  } else if (cfg.suite == "all") {
    kinds = {SuiteConfig::Kind::Scalar, SuiteConfig::Kind::Matrix};
  } else {
    diag << "error: unknown suite '" << cfg.suite
         << "' (expected scalar, matrix, or all)\n";
    return 2;
  }

  std::vector<VerificationReport> reports;
  auto start = std::chrono::steady_clock::now();
  try {
    for (SuiteConfig::Kind kind : kinds) {
      SuiteConfig sc;
      sc.kind = kind;
      sc.seed = cfg.seed;
      sc.trials = cfg.trials;
      sc.dim_lo = cfg.dim_lo;
      sc.dim_hi = cfg.dim_hi;
      sc.tol_rel = cfg.tol;
      reports.push_back(run_suite(sc));
    }
  } catch (const usage_error& e) {
    diag << "error: " << e.what() << "\n";
    return 2;
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();

  std::string text;
  if (reports.size() == 1) {
    text = reports[0].to_json() + "\n";
  } else {
    text = "[\n" + reports[0].to_json() + ",\n" + reports[1].to_json() + "\n]\n";
  }
  if (!detail::emit(text, cfg.json_path, out, diag)) return 2;

  long failures = 0;
  long checks = 0;
  for (const VerificationReport& r : reports) {
    failures += static_cast<long>(r.failures.size());
    checks += r.total_checks;
  }
  diag << "checks: " << checks << ", failures: " << failures
       << ", elapsed_ms: " << elapsed << "\n";
  return failures == 0 ? 0 : 1;
}

inline int cmd_tau_star(const CliConfig& cfg, std::ostream& out,
                        std::ostream& diag) {
  std::string text;
  char buf[128];
  try {
    TauStarResult ts = tau_star();
    std::snprintf(buf, sizeof buf, "tau_star = %.6f\n", ts.tau);
    text += buf;
    std::snprintf(buf, sizeof buf, "one_minus_tau_star = %.6f\n", ts.mirror);
    text += buf;
    std::snprintf(buf, sizeof buf, "cubic_residual = %.3e\n", ts.residual);
    text += buf;
    for (double b : cfg.confirm_b) {
      MinimizeResult mr = minimize_l1(b, cfg.quad_tol);
      std::snprintf(buf, sizeof buf,
                    "b = %.17g: argmin = %.8f, deviation = %.3e, error = %.17g\n",
                    b, mr.tau_min, std::fabs(mr.tau_min - ts.tau), mr.g_min);
      text += buf;
    }
  } catch (const convergence_error& e) {
    diag << "error: " << e.what() << "\n";
    return 2;
  } catch (const domain_error& e) {
    diag << "error: " << e.what() << "\n";
    return 2;
  }
  out << text;
  return 0;
}

inline int cmd_counterexample(const CliConfig&, std::ostream& out,
                              std::ostream& diag) {
  (void)diag;
  CounterexampleResult r = counterexample();
  std::string text;
  auto print_matrix = [&text](const char* label, const la::ComplexMatrix& m) {
    text += label;
    text += " = [";
    for (int i = 0; i < m.n_rows(); ++i) {
      if (i) text += "; ";
      for (int j = 0; j < m.n_cols(); ++j) {
        if (j) text += ", ";
        text += format_double(m(i, j).real());
      }
    }
    text += "]\n";
  };
  print_matrix("A", r.A);
  print_matrix("X", r.X);
  print_matrix("B", r.B);
  text += "lhs = " + format_double(r.lhs) + "\n";
  text += "rhs = " + format_double(r.rhs) + "\n";
  text += std::string("violated = ") + (r.violated ? "true" : "false") + "\n";
  out << text;
  return r.violated ? 0 : 1;
}

inline int cmd_sweep(const CliConfig& cfg, std::ostream& out,
                     std::ostream& diag) {
  if (!(cfg.a > 0.0) || !(cfg.b > 0.0)) {
    diag << "error: sweep requires --a and --b positive\n";
    return 2;
  }
  if (!(cfg.tau > 0.0 && cfg.tau < 1.0)) {
    diag << "error: sweep requires --tau in (0, 1)\n";
    return 2;
  }
  if (cfg.steps < 1) {
    diag << "error: sweep requires --steps >= 1\n";
    return 2;
  }
  PositivePair pair(cfg.a, cfg.b);
  double sign_tol = 1e-12 * (cfg.a + cfg.b);
  std::string text = "t,H,F_tau,K_alpha,sign\n";
  for (int i = 0; i <= cfg.steps; ++i) {
    double t = static_cast<double>(i) / static_cast<double>(cfg.steps);
    double h = heinz(pair, t);
    double f = interpolator_F(pair, cfg.tau, t);
    double k = heron(pair, alpha(t));
    double diff = h - f;
    int sign = diff > sign_tol ? 1 : (diff < -sign_tol ? -1 : 0);
    text += format_double(t) + "," + format_double(h) + "," + format_double(f) +
            "," + format_double(k) + "," + std::to_string(sign) + "\n";
  }
  if (!detail::emit(text, cfg.csv_path, out, diag)) return 2;
  return 0;
}

}  // namespace heinz
