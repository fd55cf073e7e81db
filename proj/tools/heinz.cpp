#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heinz/heinz.hpp"

namespace {

bool parse_dims(const std::string& text, int& lo, int& hi) {
  int a = 0, b = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%d:%d%c", &a, &b, &tail) != 2) return false;
  lo = a;
  hi = b;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quadratic interpolation bounds for Heinz means"};
  app.require_subcommand(1);

  heinz::CliConfig cfg;
  std::string dims = "2:6";

  CLI::App* verify = app.add_subcommand("verify", "run randomized suites");
  verify->add_option("--suite", cfg.suite, "scalar, matrix, or all")
      ->capture_default_str();
  verify->add_option("--trials", cfg.trials, "trials per relation")
      ->capture_default_str();
  verify->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  verify->add_option("--dims", dims, "matrix dimension range LO:HI")
      ->capture_default_str();
  verify->add_option("--tol", cfg.tol, "relative tolerance override");
  verify->add_option("--json", cfg.json_path, "write report to this path");

  CLI::App* taustar =
      app.add_subcommand("tau-star", "optimal interpolation node");
  taustar->add_option("--confirm-b", cfg.confirm_b,
                      "confirm the argmin numerically at these b values")
      ->delimiter(',');
  taustar->add_option("--quad-tol", cfg.quad_tol, "quadrature tolerance")
      ->capture_default_str();

  CLI::App* counter =
      app.add_subcommand("counterexample", "strengthened two-sided bound");

  CLI::App* sweep = app.add_subcommand("sweep", "tabulate H, F_tau, K_alpha");
  sweep->add_option("--a", cfg.a, "first endpoint (positive)");
  sweep->add_option("--b", cfg.b, "second endpoint (positive)");
  sweep->add_option("--tau", cfg.tau, "interpolation node in (0, 1)");
  sweep->add_option("--steps", cfg.steps, "grid steps (rows = steps + 1)");
  sweep->add_option("--csv", cfg.csv_path, "write table to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) {
      if (!parse_dims(dims, cfg.dim_lo, cfg.dim_hi)) {
        std::cerr << "error: --dims expects LO:HI\n";
        return 2;
      }
      return heinz::cmd_verify(cfg, std::cout, std::cerr);
    }
    if (taustar->parsed()) return heinz::cmd_tau_star(cfg, std::cout, std::cerr);
    if (counter->parsed())
      return heinz::cmd_counterexample(cfg, std::cout, std::cerr);
    if (sweep->parsed()) return heinz::cmd_sweep(cfg, std::cout, std::cerr);
  } catch (const heinz::usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const heinz::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
