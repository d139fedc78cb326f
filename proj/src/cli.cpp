#include "nehari/cli.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "nehari/analysis.hpp"
#include "nehari/config.hpp"
#include "nehari/fibering.hpp"
#include "nehari/sampling.hpp"
#include "nehari/solver.hpp"

namespace nehari::cli {

namespace {

std::string fmt(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

ProblemParams parse_problem(const Config& cfg) {
  ProblemParams p;
  p.dim = static_cast<int>(cfg.get_int("problem.N"));
  p.s1 = cfg.get_double("problem.s1");
  p.s2 = cfg.get_double("problem.s2");
  p.s3 = cfg.get_double("problem.s3", 0.0);
  p.p = cfg.get_double("problem.p");
  p.lambda1 = cfg.get_double("problem.lambda1", 0.0);
  p.lambda2 = cfg.get_double("problem.lambda2");
  p.lambda3 = cfg.get_double("problem.lambda3", 0.0);
  p.continuation_mode = cfg.get_bool("problem.continuation", false);
  validate(p);
  return p;
}

DomainSpec parse_domain(const Config& cfg, int dim) {
  DomainSpec spec;
  spec.dim = dim;
  const std::string kind = cfg.get_string("domain.kind", "halfspace");
  if (kind == "box") {
    spec.kind = DomainKind::Box;
    spec.extent = cfg.get_doubles("domain.extent");
  } else if (kind == "halfspace") {
    spec.kind = DomainKind::HalfSpaceBox;
    spec.extent = {cfg.get_double("domain.L", 1.0)};
  } else if (kind == "perturbed") {
    spec.kind = DomainKind::PerturbedBoundary;
    spec.extent = {cfg.get_double("domain.L", 1.0)};
    spec.alpha = cfg.get_doubles("domain.alpha");
  } else {
    throw ConfigError("domain.kind must be box, halfspace, or perturbed");
  }
  return spec;
}

SolveConfig parse_solve(const Config& cfg) {
  SolveConfig s;
  s.max_iters = static_cast<int>(cfg.get_int("solve.max_iters", 2000));
  s.grad_tol = cfg.get_double("solve.grad_tol", 1e-6);
  s.step = cfg.get_double("solve.step", 1.0);
  s.armijo = cfg.get_double("solve.armijo", 0.5);
  s.sufficient_decrease = cfg.get_double("solve.decrease", 1e-4);
  s.seed = static_cast<std::uint64_t>(cfg.get_int("solve.seed", 1));
  s.positive_part = cfg.get_bool("solve.positive_part", false);
  const std::string init = cfg.get_string("solve.init", "bump");
  if (init == "bump")
    s.init = InitKind::PositiveBump;
  else if (init == "random")
    s.init = InitKind::Random;
  else
    throw ConfigError("solve.init must be bump or random");
  return s;
}

void reject_unused(const Config& cfg) {
  const auto unused = cfg.unused_keys();
  if (!unused.empty()) throw ConfigError("unknown key: " + unused.front());
}

const char* kReportHeader =
    "case,N,s1,s2,s3,p,lambda1,lambda2,lambda3,h,energy,grad_norm,"
    "nehari_residual,iters,ps_bound_ok,multiplier_bound_ok";

std::string report_row(const ProblemParams& p, double h,
                       const SolveReport& rep) {
  std::ostringstream row;
  row << case_name(classify_case(p)) << ',' << p.dim << ',' << fmt(p.s1)
      << ',' << fmt(p.s2) << ',' << fmt(p.s3) << ',' << fmt(p.p) << ','
      << fmt(p.lambda1) << ',' << fmt(p.lambda2) << ',' << fmt(p.lambda3)
      << ',' << fmt(h) << ',' << fmt(rep.energy) << ',' << fmt(rep.grad_norm)
      << ',' << fmt(rep.nehari_residual) << ',' << rep.iters << ','
      << (rep.ps_bound_ok ? 1 : 0) << ',' << (rep.multiplier_bound_ok ? 1 : 0);
  return row.str();
}

int worker_count() {
  if (const char* env = std::getenv("NEHARI_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Independent dense-scan root finder used by the verify command to
// cross-check project(). Geometric sweep with bisection on the first
// bracket.
struct ScanResult {
  int crossings = 0;
  double root = 0.0;
};

ScanResult scan_root(const Quadruple& q, const ProblemParams& p) {
  double t_hi = 1.0;
  while (g_eval(q, p, t_hi) >= 0.0 && t_hi < 1e60) t_hi *= 2.0;
  ScanResult res;
  const int n = 20000;
  const double lo = t_hi * 1e-8, hi = 2.0 * t_hi;
  const double ratio = std::pow(hi / lo, 1.0 / (n - 1));
  double prev_t = 0.0;
  bool prev_pos = true;
  double t = lo;
  double blo = 0.0, bhi = 0.0;
  for (int i = 0; i < n; ++i, t *= ratio) {
    const bool pos = g_eval(q, p, t) > 0.0;
    if (pos != prev_pos) {
      ++res.crossings;
      if (res.crossings == 1) {
        blo = prev_t;
        bhi = t;
      }
    }
    prev_pos = pos;
    prev_t = t;
  }
  if (res.crossings >= 1) {
    while (bhi - blo > 1e-13 * bhi) {
      const double mid = 0.5 * (blo + bhi);
      (g_eval(q, p, mid) > 0.0 ? blo : bhi) = mid;
    }
    res.root = 0.5 * (blo + bhi);
  }
  return res;
}

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

CheckResult check_fibering(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const CaseTag tags[4] = {CaseTag::Case1, CaseTag::Case2, CaseTag::Case3,
                           CaseTag::Case4};
  double worst = 0.0;
  int bad = 0, ambiguous = 0;
  for (CaseTag tag : tags) {
    for (int i = 0; i < 500; ++i) {
      const ProblemParams p = sample_case_params(tag, rng);
      const Quadruple q = sample_quadruple(rng);
      try {
        const FiberingRoot root = project(q, p);
        const ScanResult oracle = scan_root(q, p);
        if (oracle.crossings != 1) {
          ++bad;
          continue;
        }
        const double rel = std::abs(root.t_u - oracle.root) / oracle.root;
        worst = std::max(worst, rel);
        if (rel > 1e-10 || !root.certified_unique) ++bad;
      } catch (const AmbiguousRoot&) {
        ++ambiguous;
      }
    }
  }
  CheckResult res;
  res.name = "fibering";
  res.pass = bad == 0 && ambiguous == 0;
  res.detail = "worst_rel=" + fmt(worst) +
               " ambiguous=" + std::to_string(ambiguous);
  return res;
}

CheckResult check_gradient(const ProblemParams& params,
                           std::shared_ptr<const Grid> grid,
                           std::uint64_t seed, bool corrupt) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double worst_fd = 0.0, worst_j = 0.0;
  const double eps = 1e-5;
  for (int trial = 0; trial < 50; ++trial) {
    Field u(grid), v(grid);
    for (std::size_t n = 0; n < u.size(); ++n) {
      u[n] = dist(rng);
      v[n] = dist(rng);
    }
    Field g = gradient(u, params);
    if (corrupt && !g.values().empty()) g[0] += 1e-3;
    double pair = dirichlet_inner(g, v);
    Field up = u, um = u;
    for (std::size_t n = 0; n < u.size(); ++n) {
      up[n] += eps * v[n];
      um[n] -= eps * v[n];
    }
    const double fd =
        (energy(up, params).phi - energy(um, params).phi) / (2.0 * eps);
    worst_fd = std::max(worst_fd,
                        std::abs(pair - fd) / std::max(std::abs(fd), 1e-12));
    const EnergyReport er = energy(u, params);
    const double ju = dirichlet_inner(g, u);
    worst_j = std::max(worst_j, std::abs(er.j - ju) /
                                    std::max(std::abs(er.j), 1e-12));
  }
  CheckResult res;
  res.name = "gradient";
  res.pass = worst_fd < 1e-5 && worst_j < 1e-10;
  res.detail = "fd_rel=" + fmt(worst_fd) + " j_rel=" + fmt(worst_j);
  return res;
}

CheckResult check_scaling(const ProblemParams& params,
                          std::shared_ptr<const Grid> grid,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::uniform_real_distribution<double> l1(-2.0, 2.0);
  std::uniform_real_distribution<double> l2(0.5, 4.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Field u(grid);
    for (std::size_t n = 0; n < u.size(); ++n) u[n] = dist(rng);
    ProblemParams p = params;
    p.lambda1 = l1(rng);
    p.lambda2 = l2(rng);
    const ScalingCheck chk = scaling_identity_check(u, p);
    worst = std::max(worst, std::abs(chk.lhs - chk.rhs) /
                                std::max(std::abs(chk.rhs), 1e-12));
  }
  CheckResult res;
  res.name = "scaling";
  res.pass = worst <= 1e-10;
  res.detail = "worst_rel=" + fmt(worst);
  return res;
}

CheckResult check_brezis_lieb(const ProblemParams& params,
                              std::shared_ptr<const Grid> grid) {
  Field u(grid), bump(grid), zero(grid);
  // disjoint supports: split the enumeration in half
  for (std::size_t n = 0; n < u.size(); ++n) {
    if (n < u.size() / 2)
      u[n] = 1.0 + 0.01 * static_cast<double>(n);
    else
      bump[n] = 0.5 + 0.02 * static_cast<double>(n);
  }
  const double disjoint = brezis_lieb_defect(u, bump, params);
  const double trivial = brezis_lieb_defect(u, zero, params);
  CheckResult res;
  res.name = "brezis_lieb";
  // disjoint supports split each sum exactly; only summation-order
  // roundoff remains
  res.pass = disjoint <= 1e-14 && trivial <= 1e-14;
  res.detail = "disjoint=" + fmt(disjoint) + " zero_bump=" + fmt(trivial);
  return res;
}

CheckResult check_threshold(const ProblemParams& params,
                            const DomainSpec& spec, double h,
                            const SolveConfig& scfg) {
  if (spec.kind != DomainKind::PerturbedBoundary)
    throw ConfigError("threshold check needs domain.kind = perturbed");
  auto grid = std::make_shared<Grid>(Grid::build(spec, h));
  const SolveReport dom = minimize(grid, params, scfg);
  const SolveReport half =
      solve_half_space(params, spec.extent.at(0), h, scfg);
  CheckResult res;
  res.name = "threshold";
  res.pass = dom.converged && half.converged && threshold_compare(dom, half);
  res.detail = "domain=" + fmt(dom.energy) + " halfspace=" + fmt(half.energy);
  return res;
}

CheckResult check_testfunction(const ProblemParams& params,
                               const DomainSpec& spec, double h,
                               const SolveConfig& scfg,
                               const std::vector<double>& epsilons) {
  if (spec.kind != DomainKind::PerturbedBoundary)
    throw ConfigError("testfunction check needs domain.kind = perturbed");
  const SolveReport half =
      solve_half_space(params, spec.extent.at(0), h, scfg);
  const TestFunctionReport rep = test_function_scan(
      half.u_star, spec, params, epsilons, half.energy);
  bool tops_negative = true;
  for (double t : rep.energy_at_top) tops_negative = tops_negative && t < 0.0;
  const double best_small = rep.max_energy_over_t.empty()
                                ? 1e300
                                : rep.max_energy_over_t.front();
  CheckResult res;
  res.name = "testfunction";
  res.pass = half.converged && rep.K3 > 0.0 && tops_negative &&
             best_small < rep.c_limit;
  res.detail = "max_phi=" + fmt(best_small) + " c_limit=" + fmt(rep.c_limit) +
               " K3=" + fmt(rep.K3);
  return res;
}

}  // namespace

int run_solve(const std::string& config_path) {
  ProblemParams params;
  DomainSpec spec;
  SolveConfig scfg;
  double h = 0.0;
  std::string report_path, field_path;
  try {
    const Config cfg = Config::parse_file(config_path);
    params = parse_problem(cfg);
    spec = parse_domain(cfg, params.dim);
    h = cfg.get_double("grid.h");
    scfg = parse_solve(cfg);
    report_path = cfg.get_string("output.report", "report.csv");
    field_path = cfg.get_string("output.field", "solution.field");
    reject_unused(cfg);
    if (classify_case(params) == CaseTag::Unsupported)
      throw ConfigError("parameters fall outside the four supported cases");
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }
  try {
    auto grid = std::make_shared<Grid>(Grid::build(spec, h));
    const SolveReport rep = minimize(grid, params, scfg);
    std::ofstream csv(report_path);
    csv << kReportHeader << '\n' << report_row(params, h, rep) << '\n';
    std::ofstream fout(field_path);
    dump_field(rep.u_star, fout);
    return rep.converged ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "solve error: " << e.what() << '\n';
    return 1;
  }
}

int run_sweep(const std::string& config_path) {
  ProblemParams params;
  DomainSpec spec;
  SolveConfig scfg;
  double h = 0.0;
  std::string axis, report_path;
  std::vector<double> values;
  try {
    const Config cfg = Config::parse_file(config_path);
    params = parse_problem(cfg);
    spec = parse_domain(cfg, params.dim);
    h = cfg.get_double("grid.h");
    scfg = parse_solve(cfg);
    axis = cfg.get_string("sweep.axis");
    values = cfg.get_doubles("sweep.values");
    report_path = cfg.get_string("output.report", "sweep.csv");
    reject_unused(cfg);
    if (values.empty()) throw ConfigError("sweep.values must be non-empty");
    if (axis != "lambda1" && axis != "lambda3" && axis != "p" && axis != "h" &&
        axis != "L")
      throw ConfigError("sweep.axis must be lambda1, lambda3, p, h, or L");
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }

  struct Row {
    std::string text;
    bool ok = false;
  };
  std::vector<Row> rows(values.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= values.size()) return;
      ProblemParams p = params;
      DomainSpec sp = spec;
      double hh = h;
      const double v = values[i];
      if (axis == "lambda1") p.lambda1 = v;
      else if (axis == "lambda3") p.lambda3 = v;
      else if (axis == "p") p.p = v;
      else if (axis == "h") hh = v;
      else sp.extent = {v};
      std::ostringstream row;
      row << axis << ',' << fmt(v) << ',';
      try {
        validate(p);
        if (classify_case(p) == CaseTag::Unsupported)
          throw std::runtime_error("unsupported case");
        auto grid = std::make_shared<Grid>(Grid::build(sp, hh));
        const SolveReport rep = minimize(grid, p, scfg);
        row << report_row(p, hh, rep) << ','
            << (rep.converged ? "ok" : "not_converged");
        rows[i] = {row.str(), true};
      } catch (const std::exception& e) {
        std::ostringstream bad;
        bad << axis << ',' << fmt(v)
            << ",,,,,,,,,,,,,,,,error: " << e.what();
        rows[i] = {bad.str(), false};
      }
    }
  };
  const int workers =
      std::min<int>(worker_count(), static_cast<int>(values.size()));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();

  std::ofstream csv(report_path);
  csv << "axis,value," << kReportHeader << ",status\n";
  bool any_ok = false;
  for (const Row& r : rows) {
    csv << r.text << '\n';
    any_ok = any_ok || r.ok;
  }
  return any_ok ? 0 : 2;
}

int run_continue(const std::string& config_path) {
  ProblemParams params;
  DomainSpec spec;
  SolveConfig scfg;
  double h = 0.0;
  std::vector<double> path;
  std::string report_path;
  try {
    const Config cfg = Config::parse_file(config_path);
    params = parse_problem(cfg);
    spec = parse_domain(cfg, params.dim);
    h = cfg.get_double("grid.h");
    scfg = parse_solve(cfg);
    path = cfg.get_doubles("continue.path");
    report_path = cfg.get_string("output.report", "continuation.csv");
    reject_unused(cfg);
    if (path.empty() || path.front() != 0.0)
      throw ConfigError("continue.path must start at 0");
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }
  try {
    auto grid = std::make_shared<Grid>(Grid::build(spec, h));
    const auto reports = continuation_in_lambda3(grid, params, path, scfg);
    std::ofstream csv(report_path);
    csv << "step,lambda3,energy,grad_norm,nehari_residual,iters,min_value,"
           "detached,converged\n";
    bool all_ok = true;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const SolveReport& rep = reports[i];
      double mn = 0.0;
      for (double v : rep.u_star.values()) mn = std::min(mn, v);
      csv << i << ',' << fmt(path[i]) << ',' << fmt(rep.energy) << ','
          << fmt(rep.grad_norm) << ',' << fmt(rep.nehari_residual) << ','
          << rep.iters << ',' << fmt(mn) << ',' << (rep.detached ? 1 : 0)
          << ',' << (rep.converged ? 1 : 0) << '\n';
      all_ok = all_ok && rep.converged;
    }
    return all_ok ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "continuation error: " << e.what() << '\n';
    return 1;
  }
}

int run_verify(const std::string& config_path) {
  try {
    const Config cfg = Config::parse_file(config_path);
    const ProblemParams params = parse_problem(cfg);
    const DomainSpec spec = parse_domain(cfg, params.dim);
    const double h = cfg.get_double("grid.h");
    const SolveConfig scfg = parse_solve(cfg);
    const auto checks = split_list(cfg.get_string("verify.checks"));
    const bool corrupt = cfg.get_bool("verify.corrupt_gradient", false);
    std::vector<double> eps = {0.3, 0.35, 0.37};
    if (cfg.has("verify.epsilons")) eps = cfg.get_doubles("verify.epsilons");
    reject_unused(cfg);
    if (checks.empty()) throw ConfigError("verify.checks must be non-empty");

    auto grid = std::make_shared<Grid>(Grid::build(spec, h));
    bool all_pass = true;
    for (const std::string& name : checks) {
      CheckResult res;
      if (name == "fibering")
        res = check_fibering(scfg.seed);
      else if (name == "gradient")
        res = check_gradient(params, grid, scfg.seed, corrupt);
      else if (name == "scaling")
        res = check_scaling(params, grid, scfg.seed);
      else if (name == "brezis_lieb")
        res = check_brezis_lieb(params, grid);
      else if (name == "threshold")
        res = check_threshold(params, spec, h, scfg);
      else if (name == "testfunction")
        res = check_testfunction(params, spec, h, scfg, eps);
      else
        throw ConfigError("unknown verify check: " + name);
      std::cout << (res.pass ? "PASS" : "FAIL") << ' ' << res.name << ' '
                << res.detail << '\n';
      all_pass = all_pass && res.pass;
    }
    return all_pass ? 0 : 3;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }
}

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: nehari <solve|sweep|verify|continue> <config>\n";
    return 1;
  }
  const std::string mode = argv[1];
  const std::string path = argv[2];
  if (mode == "solve") return run_solve(path);
  if (mode == "sweep") return run_sweep(path);
  if (mode == "verify") return run_verify(path);
  if (mode == "continue") return run_continue(path);
  std::cerr << "unknown mode: " << mode << '\n';
  return 1;
}

}  // namespace nehari::cli
