#include <array>
#include <cmath>
#include <utility>

#include "doctest.h"
#include "nehari/solver.hpp"

using namespace nehari;

namespace {

std::shared_ptr<const Grid> half_grid(double L, double h) {
  DomainSpec spec;
  spec.kind = DomainKind::HalfSpaceBox;
  spec.dim = 3;
  spec.extent = {L};
  return std::make_shared<Grid>(Grid::build(spec, h));
}

}  // namespace

TEST_CASE("single interior node: solver reaches the fibering root exactly") {
  DomainSpec spec;
  spec.kind = DomainKind::Box;
  spec.dim = 3;
  spec.extent = {1.0, 1.0, 1.0};
  auto g = std::make_shared<Grid>(Grid::build(spec, 0.5));
  REQUIRE(g->size() == 1);

  ProblemParams params;
  params.lambda3 = 0.5;
  SolveConfig cfg;
  cfg.grad_tol = 1e-10;
  const SolveReport rep = minimize(g, params, cfg);
  CHECK(rep.converged);

  // oracle: scan the single ray for the zero of J, then evaluate Phi there
  Field unit(g);
  unit[0] = 1.0;
  const Quadruple q1 = quadruple(unit, params);
  double lo = 1e-6, hi = 1e6;
  auto j_at = [&](double t) {
    Field v(g);
    v[0] = t;
    return energy(v, params).j;
  };
  REQUIRE(j_at(lo) > 0.0);
  REQUIRE(j_at(hi) < 0.0);
  for (int i = 0; i < 200; ++i) {
    const double mid = std::sqrt(lo * hi);
    (j_at(mid) > 0.0 ? lo : hi) = mid;
  }
  Field best(g);
  best[0] = lo;
  CHECK(rep.energy == doctest::Approx(energy(best, params).phi).epsilon(1e-8));
  CHECK(std::abs(rep.u_star[0]) == doctest::Approx(lo).epsilon(1e-6));
  (void)q1;
}

TEST_CASE("two-term manifold identity holds at the solution") {
  auto g = half_grid(1.0, 0.25);
  ProblemParams params;
  params.lambda1 = 0.0;
  params.lambda3 = 0.0;
  SolveConfig cfg;
  cfg.grad_tol = 1e-5;
  const SolveReport rep = minimize(g, params, cfg);
  CHECK(rep.converged);
  const double q2 = derived_constants(params).twoStar2;
  CHECK(rep.energy ==
        doctest::Approx((0.5 - 1.0 / q2) * rep.quad.a).epsilon(1e-8));
  CHECK(rep.nehari_residual <= 1e-8 * rep.quad.a);
  CHECK(rep.multiplier_bound_ok);
  CHECK(rep.ps_bound_ok);
}

TEST_CASE("descent trace is monotone and deterministic") {
  auto g = half_grid(1.0, 0.25);
  ProblemParams params;
  params.lambda3 = -0.5;
  SolveConfig cfg;
  cfg.grad_tol = 1e-5;
  cfg.init = InitKind::Random;
  cfg.seed = 31;
  const SolveReport a = minimize(g, params, cfg);
  const SolveReport b = minimize(g, params, cfg);
  CHECK(a.converged);
  for (std::size_t i = 1; i < a.trace.size(); ++i)
    CHECK(a.trace[i].energy <= a.trace[i - 1].energy + 1e-14);
  REQUIRE(a.u_star.size() == b.u_star.size());
  for (std::size_t n = 0; n < a.u_star.size(); ++n)
    CHECK(a.u_star[n] == b.u_star[n]);
  CHECK(a.energy == b.energy);
}

TEST_CASE("half-space solve is axisymmetric with positive energy") {
  ProblemParams params;  // lambda3 ignored by solve_half_space
  SolveConfig cfg;
  cfg.grad_tol = 1e-5;
  const SolveReport rep = solve_half_space(params, 1.0, 0.25, cfg);
  CHECK(rep.converged);
  CHECK(rep.energy > 0.0);
  CHECK(rep.multiplier_bound_ok);
  CHECK(rep.ps_bound_ok);

  // equal values across permutations and sign flips of the primed indices
  const Grid& g = rep.u_star.grid();
  auto orbit_key = [&](std::size_t n) {
    int a = std::abs(g.index(n, 0)), b = std::abs(g.index(n, 1));
    if (a > b) std::swap(a, b);
    return std::array<int, 3>{a, b, g.index(n, 2)};
  };
  for (std::size_t n = 0; n < g.size(); ++n)
    for (std::size_t m = n + 1; m < g.size(); ++m)
      if (orbit_key(n) == orbit_key(m))
        CHECK(rep.u_star[n] == doctest::Approx(rep.u_star[m]).epsilon(1e-13));
}

TEST_CASE("energy decreases when the half-space box grows") {
  ProblemParams params;
  params.lambda3 = 0.0;
  SolveConfig cfg;
  cfg.grad_tol = 1e-5;
  const SolveReport small = solve_half_space(params, 1.0, 0.25, cfg);
  CHECK(small.converged);

  // seed the larger box with the zero extension of the smaller solution;
  // projected descent can then only go further down
  auto big = half_grid(2.0, 0.25);
  Field init(big);
  const Grid& sg = small.u_star.grid();
  for (std::size_t n = 0; n < sg.size(); ++n) {
    const int idx[3] = {sg.index(n, 0), sg.index(n, 1), sg.index(n, 2)};
    const std::size_t m = big->interior_at(idx);
    REQUIRE(m != Grid::npos);
    init[m] = small.u_star[n];
  }
  SolveConfig lcfg = cfg;
  lcfg.init = InitKind::Given;
  lcfg.init_field = init;
  lcfg.axisymmetrize = true;
  const SolveReport large = minimize(big, params, lcfg);
  CHECK(large.converged);
  CHECK(large.energy < small.energy + 1e-10);
}

TEST_CASE("continuation in lambda3") {
  auto g = half_grid(1.0, 0.25);
  ProblemParams params;
  params.s3 = 1.5;
  params.p = 2.0;  // equals 2*(s3) - 1, admissible only in continuation mode;
                   // also p <= 2*(s1) - 1 = 3 so lambda3 < 0 stays in Case2
  params.lambda3 = 0.0;
  SolveConfig cfg;
  cfg.grad_tol = 1e-5;

  CHECK_THROWS_AS(
      continuation_in_lambda3(g, params, {-1e-3, -2e-3}, cfg),
      std::invalid_argument);

  const std::vector<double> path = {0.0, -1e-3, -2e-3};
  const auto reports = continuation_in_lambda3(g, params, path, cfg);
  REQUIRE(reports.size() == 3);
  for (const SolveReport& rep : reports) {
    CHECK(rep.converged);
    CHECK_FALSE(rep.detached);
    double mn = 0.0;
    for (std::size_t n = 0; n < rep.u_star.size(); ++n)
      mn = std::min(mn, rep.u_star[n]);
    CHECK(mn >= -1e-10);
  }
  for (std::size_t k = 1; k < reports.size(); ++k) {
    const double dmax = std::max(reports[k - 1].quad.d, reports[k].quad.d);
    const double bound =
        1.5 * dmax / (params.p + 1.0) * std::abs(path[k] - path[k - 1]);
    CHECK(std::abs(reports[k].energy - reports[k - 1].energy) <= bound);
  }
}
