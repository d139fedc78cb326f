#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "nehari/cli.hpp"
#include "nehari/config.hpp"

using namespace nehari;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "nehari_cli_tests";
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream out(p);
  out << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kProblemBlock =
    "problem.N = 3\n"
    "problem.s1 = 1.0\n"
    "problem.s2 = 0.5\n"
    "problem.p = 2.0\n"
    "problem.lambda1 = 1.0\n"
    "problem.lambda2 = 1.0\n"
    "problem.lambda3 = 1.0\n"
    "domain.kind = halfspace\n"
    "domain.L = 1.0\n"
    "grid.h = 0.25\n"
    "solve.grad_tol = 1e-4\n";

}  // namespace

TEST_CASE("config parsing") {
  const Config cfg = Config::parse_string(
      "# comment\n"
      "a.x = 1.5\n"
      "a.list = 1, 2.5, -3  # trailing comment\n"
      "flag = true\n"
      "name = hello\n");
  CHECK(cfg.get_double("a.x") == 1.5);
  CHECK(cfg.get_bool("flag", false));
  CHECK(cfg.get_string("name") == "hello");
  const auto xs = cfg.get_doubles("a.list");
  REQUIRE(xs.size() == 3);
  CHECK(xs[1] == 2.5);
  CHECK(cfg.unused_keys().empty());

  const Config partial = Config::parse_string("a = 1\nb = 2\n");
  partial.get_double("a");
  const auto unused = partial.unused_keys();
  REQUIRE(unused.size() == 1);
  CHECK(unused[0] == "b");

  CHECK_THROWS_AS(Config::parse_string("a = 1\na = 2\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse_string("no_equals_sign\n"), ConfigError);
  const Config bad = Config::parse_string("a = xyz\n");
  CHECK_THROWS_AS(bad.get_double("a"), ConfigError);
  CHECK_THROWS_AS(bad.get_double("missing"), ConfigError);
}

TEST_CASE("solve writes report and field, rejects bad configs") {
  const fs::path report = scratch() / "solve_report.csv";
  const fs::path field = scratch() / "solve_field.txt";
  const fs::path cfg = write_config(
      "solve_ok.cfg", std::string(kProblemBlock) +
                          "output.report = " + report.string() + "\n" +
                          "output.field = " + field.string() + "\n");
  CHECK(cli::run_solve(cfg.string()) == 0);
  const std::string csv = slurp(report);
  CHECK(csv.find("case,N,s1,s2,s3,p,lambda1,lambda2,lambda3,h,energy,"
                 "grad_norm,nehari_residual,iters,ps_bound_ok,"
                 "multiplier_bound_ok") == 0);
  CHECK(csv.find("Case1,3,") != std::string::npos);
  std::istringstream fin(slurp(field));
  int N = 0;
  double h = 0.0;
  fin >> N >> h;
  CHECK(N == 3);
  CHECK(h == 0.25);

  const fs::path bad_l2 = write_config(
      "solve_bad_l2.cfg",
      "problem.N = 3\nproblem.s1 = 1.0\nproblem.s2 = 0.5\nproblem.p = 2.0\n"
      "problem.lambda2 = -1.0\ngrid.h = 0.25\n");
  CHECK(cli::run_solve(bad_l2.string()) == 1);

  const fs::path unknown = write_config(
      "solve_unknown.cfg", std::string(kProblemBlock) + "bogus.key = 1\n");
  CHECK(cli::run_solve(unknown.string()) == 1);
}

TEST_CASE("solve reports non-convergence with exit code 2") {
  const fs::path report = scratch() / "noconv_report.csv";
  const fs::path cfg = write_config(
      "solve_noconv.cfg",
      "problem.N = 3\nproblem.s1 = 1.0\nproblem.s2 = 0.5\nproblem.p = 2.0\n"
      "problem.lambda1 = 1.0\nproblem.lambda2 = 1.0\nproblem.lambda3 = 1.0\n"
      "domain.kind = halfspace\ndomain.L = 1.0\ngrid.h = 0.25\n"
      "solve.grad_tol = 1e-15\nsolve.max_iters = 1\n"
      "output.report = " + report.string() + "\n" +
      "output.field = " + (scratch() / "noconv_field.txt").string() + "\n");
  CHECK(cli::run_solve(cfg.string()) == 2);
  CHECK(slurp(report).find("Case1,3,") != std::string::npos);
}

TEST_CASE("sweep is deterministic across runs") {
  const fs::path r1 = scratch() / "sweep1.csv";
  const fs::path r2 = scratch() / "sweep2.csv";
  const std::string base = std::string(kProblemBlock) +
                           "sweep.axis = lambda3\n"
                           "sweep.values = 0.5, 1.0, 1.5\n";
  const fs::path c1 =
      write_config("sweep1.cfg", base + "output.report = " + r1.string() + "\n");
  const fs::path c2 =
      write_config("sweep2.cfg", base + "output.report = " + r2.string() + "\n");
  CHECK(cli::run_sweep(c1.string()) == 0);
  CHECK(cli::run_sweep(c2.string()) == 0);
  const std::string a = slurp(r1), b = slurp(r2);
  CHECK(a == b);
  CHECK(a.find("axis,value,case,") == 0);

  const fs::path bad = write_config(
      "sweep_bad_axis.cfg", base + "output.report = " + r1.string() +
                                "\nsweep.axis2 = oops\n");
  CHECK(cli::run_sweep(bad.string()) == 1);
  const fs::path bad2 = write_config(
      "sweep_bad.cfg", std::string(kProblemBlock) +
                           "sweep.axis = sigma\nsweep.values = 1\n");
  CHECK(cli::run_sweep(bad2.string()) == 1);
}

TEST_CASE("sweep keeps going past invalid points") {
  const fs::path r = scratch() / "sweep_mixed.csv";
  const fs::path cfg = write_config(
      "sweep_mixed.cfg", std::string(kProblemBlock) +
                             "sweep.axis = p\n"
                             "sweep.values = 2.0, 9.0\n"  // p = 9 is invalid
                             "output.report = " + r.string() + "\n");
  CHECK(cli::run_sweep(cfg.string()) == 0);
  const std::string csv = slurp(r);
  CHECK(csv.find("ok") != std::string::npos);
  CHECK(csv.find("error:") != std::string::npos);
}

TEST_CASE("verify passes honest checks and fails corrupted ones") {
  const fs::path ok = write_config(
      "verify_ok.cfg", std::string(kProblemBlock) +
                           "verify.checks = scaling, brezis_lieb\n");
  CHECK(cli::run_verify(ok.string()) == 0);

  const fs::path corrupt = write_config(
      "verify_corrupt.cfg", std::string(kProblemBlock) +
                                "verify.checks = gradient\n"
                                "verify.corrupt_gradient = true\n");
  CHECK(cli::run_verify(corrupt.string()) == 3);

  const fs::path bad = write_config(
      "verify_bad.cfg",
      std::string(kProblemBlock) + "verify.checks = nonsense\n");
  CHECK(cli::run_verify(bad.string()) == 1);
}

TEST_CASE("continue runs a short path and writes the trace") {
  const fs::path r = scratch() / "cont.csv";
  const std::string block =
      "problem.N = 3\n"
      "problem.s1 = 1.0\n"
      "problem.s2 = 0.5\n"
      "problem.s3 = 1.5\n"
      "problem.p = 2.0\n"
      "problem.lambda1 = 1.0\n"
      "problem.lambda2 = 1.0\n"
      "problem.continuation = true\n"
      "domain.kind = halfspace\n"
      "domain.L = 1.0\n"
      "grid.h = 0.25\n"
      "solve.grad_tol = 1e-4\n";
  const fs::path cfg = write_config(
      "cont.cfg", block + "continue.path = 0, -1e-3\noutput.report = " +
                      r.string() + "\n");
  CHECK(cli::run_continue(cfg.string()) == 0);
  const std::string csv = slurp(r);
  CHECK(csv.find("step,lambda3,energy,") == 0);

  const fs::path bad = write_config(
      "cont_bad.cfg", block + "continue.path = -1e-3, -2e-3\n");
  CHECK(cli::run_continue(bad.string()) == 1);
}
