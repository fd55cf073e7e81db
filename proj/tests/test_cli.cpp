#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "heinz/cli.hpp"

using namespace heinz;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string diag;
};

template <typename Cmd>
RunResult run(Cmd cmd, const CliConfig& cfg) {
  std::ostringstream out, diag;
  int code = cmd(cfg, out, diag);
  return {code, out.str(), diag.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("optimal node command prints the six-decimal root") {
  CliConfig cfg;
  RunResult r = run(cmd_tau_star, cfg);
  CHECK(r.code == 0);
  CHECK(r.out.find("tau_star = 0.326352") != std::string::npos);
  CHECK(r.out.find("one_minus_tau_star = 0.673648") != std::string::npos);
  CHECK(r.out.find("cubic_residual") != std::string::npos);
}

TEST_CASE("optimal node command confirms the argmin numerically") {
  CliConfig cfg;
  cfg.confirm_b = {2.0};
  cfg.quad_tol = 1e-8;
  RunResult r = run(cmd_tau_star, cfg);
  CHECK(r.code == 0);
  CHECK(r.out.find("b = 2:") != std::string::npos);
  CHECK(r.out.find("argmin = 0.326") != std::string::npos);
  // deviation stays under the documented bound
  size_t pos = r.out.find("deviation = ");
  REQUIRE(pos != std::string::npos);
  double dev = std::stod(r.out.substr(pos + 12));
  CHECK(dev <= 2e-4);
}

TEST_CASE("counterexample command reports the violation and exits zero") {
  CliConfig cfg;
  RunResult r = run(cmd_counterexample, cfg);
  CHECK(r.code == 0);
  CHECK(r.out.find("A = [1, 0; 0, 1.5]") != std::string::npos);
  CHECK(r.out.find("B = [1, 0; 0, 0.5]") != std::string::npos);
  CHECK(r.out.find("lhs = 2.0505102572168") != std::string::npos);
  CHECK(r.out.find("rhs = 2\n") != std::string::npos);
  CHECK(r.out.find("violated = true") != std::string::npos);
}

TEST_CASE("sweep emits the documented table") {
  CliConfig cfg;
  cfg.a = 4.0;
  cfg.b = 1.0;
  cfg.tau = 0.3;
  cfg.steps = 10;
  RunResult r = run(cmd_sweep, cfg);
  REQUIRE(r.code == 0);
  std::vector<std::string> lines = lines_of(r.out);
  REQUIRE(lines.size() == 12);  // header + steps + 1 rows
  CHECK(lines[0] == "t,H,F_tau,K_alpha,sign");
  CHECK(lines[1] == "0,2.5,2.5,2.5,0");
  // interior of [tau, 1-tau]: the mean sits above the interpolator
  CHECK(lines[6].back() == '1');   // t = 0.5
  CHECK(lines[3].substr(lines[3].size() - 2) == "-1");  // t = 0.2, outside
  CHECK(lines[11].back() == '0');  // t = 1 returns to the shared endpoint
}

TEST_CASE("sweep at tau one-half matches the heron column") {
  CliConfig cfg;
  cfg.a = 9.0;
  cfg.b = 4.0;
  cfg.tau = 0.5;
  cfg.steps = 8;
  RunResult r = run(cmd_sweep, cfg);
  REQUIRE(r.code == 0);
  std::vector<std::string> lines = lines_of(r.out);
  for (size_t i = 1; i < lines.size(); ++i) {
    double t, h, f, k;
    int sign;
    REQUIRE(std::sscanf(lines[i].c_str(), "%lf,%lf,%lf,%lf,%d", &t, &h, &f, &k,
                        &sign) == 5);
    CHECK(std::fabs(f - k) <= 1e-12 * (cfg.a + cfg.b));
  }
}

TEST_CASE("sweep validates its parameters") {
  CliConfig cfg;
  cfg.a = 4.0;
  cfg.b = 1.0;
  cfg.tau = 0.3;
  cfg.steps = 10;

  CliConfig bad = cfg;
  bad.a = 0.0;
  CHECK(run(cmd_sweep, bad).code == 2);
  bad = cfg;
  bad.tau = 1.0;
  CHECK(run(cmd_sweep, bad).code == 2);
  bad = cfg;
  bad.steps = 0;
  CHECK(run(cmd_sweep, bad).code == 2);
}

TEST_CASE("sweep writes identical bytes to file and stream") {
  CliConfig cfg;
  cfg.a = 4.0;
  cfg.b = 1.0;
  cfg.tau = 0.25;
  cfg.steps = 16;
  RunResult direct = run(cmd_sweep, cfg);
  REQUIRE(direct.code == 0);

  std::string path = "sweep_test_out.csv";
  cfg.csv_path = path;
  RunResult filed = run(cmd_sweep, cfg);
  REQUIRE(filed.code == 0);
  CHECK(filed.out.empty());
  CHECK(read_file(path) == direct.out);
  std::remove(path.c_str());
}

TEST_CASE("verification command reports clean scalar runs") {
  CliConfig cfg;
  cfg.suite = "scalar";
  cfg.trials = 20;
  cfg.seed = 5;
  RunResult r = run(cmd_verify, cfg);
  CHECK(r.code == 0);
  CHECK(r.out.find("\"suite\": \"scalar\"") != std::string::npos);
  CHECK(r.out.find("\"failures\": []") != std::string::npos);
  CHECK(r.out.find("\"elapsed_ms\": 0") != std::string::npos);
  CHECK(r.diag.find("checks: 260, failures: 0") != std::string::npos);
}

TEST_CASE("verification command covers both suites on request") {
  CliConfig cfg;
  cfg.suite = "all";
  cfg.trials = 5;
  cfg.seed = 11;
  cfg.dim_lo = 2;
  cfg.dim_hi = 3;
  RunResult r = run(cmd_verify, cfg);
  CHECK(r.code == 0);
  CHECK(r.out.substr(0, 2) == "[\n");
  CHECK(r.out.find("\"suite\": \"scalar\"") != std::string::npos);
  CHECK(r.out.find("\"suite\": \"matrix\"") != std::string::npos);

  RunResult again = run(cmd_verify, cfg);
  CHECK(again.out == r.out);  // byte-for-byte determinism
}

TEST_CASE("verification command validates configuration") {
  CliConfig cfg;
  cfg.suite = "nonsense";
  CHECK(run(cmd_verify, cfg).code == 2);
  cfg.suite = "scalar";
  cfg.trials = 0;
  CHECK(run(cmd_verify, cfg).code == 2);
  cfg.trials = 3;
  cfg.suite = "matrix";
  cfg.dim_lo = 5;
  cfg.dim_hi = 2;
  CHECK(run(cmd_verify, cfg).code == 2);
}

TEST_CASE("verification command refuses unwritable output without partial files") {
  CliConfig cfg;
  cfg.suite = "scalar";
  cfg.trials = 2;
  cfg.json_path = "/nonexistent_dir_zz/report.json";
  RunResult r = run(cmd_verify, cfg);
  CHECK(r.code == 2);
  CHECK(r.diag.find("error") != std::string::npos);
}

TEST_CASE("verification report file matches the stream output") {
  CliConfig cfg;
  cfg.suite = "scalar";
  cfg.trials = 4;
  cfg.seed = 3;
  RunResult direct = run(cmd_verify, cfg);
  REQUIRE(direct.code == 0);

  std::string path = "verify_test_out.json";
  cfg.json_path = path;
  RunResult filed = run(cmd_verify, cfg);
  REQUIRE(filed.code == 0);
  CHECK(read_file(path) == direct.out);
  std::remove(path.c_str());
}
