#include "nehari/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace nehari {

namespace {

// Averages nodal values over orbits of the lattice symmetries that fix the
// x_N axis: permutations and sign flips of the primed indices. The discrete
// energy is exactly invariant under these, so the averaging never fights
// the descent flow.
class Symmetrizer {
 public:
  explicit Symmetrizer(const Grid& g) {
    const int N = g.dim();
    std::map<std::vector<int>, std::vector<std::size_t>> groups;
    for (std::size_t n = 0; n < g.size(); ++n) {
      std::vector<int> key(N);
      for (int k = 0; k + 1 < N; ++k) key[k] = std::abs(g.index(n, k));
      std::sort(key.begin(), key.end() - 1);
      key[N - 1] = g.index(n, N - 1);
      groups[key].push_back(n);
    }
    for (auto& [key, members] : groups) groups_.push_back(std::move(members));
  }

  void apply(Field& u) const {
    for (const auto& members : groups_) {
      double mean = 0.0;
      for (std::size_t n : members) mean += u[n];
      mean /= static_cast<double>(members.size());
      for (std::size_t n : members) u[n] = mean;
    }
  }

 private:
  std::vector<std::vector<std::size_t>> groups_;
};

bool ps_identity_ok(const Quadruple& q, const ProblemParams& params,
                    double phi) {
  const DerivedConstants dc = derived_constants(params);
  const double q1 = dc.twoStar1, q2 = dc.twoStar2;
  const double pp1 = params.p + 1.0;
  double rhs = 0.0;
  switch (classify_case(params)) {
    case CaseTag::Case1: {
      const double sigma = (pp1 >= q1) ? 1.0 / q1 : 1.0 / pp1;
      rhs = (0.5 - sigma) * q.a + (sigma - 1.0 / q1) * params.lambda1 * q.b +
            (sigma - 1.0 / q2) * params.lambda2 * q.c +
            (sigma - 1.0 / pp1) * params.lambda3 * q.d;
      break;
    }
    case CaseTag::Case2:
      rhs = (0.5 - 1.0 / pp1) * q.a +
            (1.0 / pp1 - 1.0 / q1) * params.lambda1 * q.b +
            (1.0 / pp1 - 1.0 / q2) * params.lambda2 * q.c;
      break;
    case CaseTag::Case3:
      rhs = (0.5 - 1.0 / q1) * q.a +
            (1.0 / q1 - 1.0 / q2) * params.lambda2 * q.c +
            (1.0 / q1 - 1.0 / pp1) * params.lambda3 * q.d;
      break;
    case CaseTag::Case4:
      rhs = (0.5 - 1.0 / q2) * q.a +
            (1.0 / q2 - 1.0 / q1) * params.lambda1 * q.b +
            (1.0 / q2 - 1.0 / pp1) * params.lambda3 * q.d;
      break;
    default:
      return false;
  }
  return std::abs(phi - rhs) <= 1e-8 * std::max(std::abs(phi), 1e-30);
}

}  // namespace

Field positive_bump(std::shared_ptr<const Grid> grid) {
  Field u(grid);
  const Grid& g = *grid;
  const int N = g.dim();
  const double h = g.spacing();
  for (std::size_t n = 0; n < g.size(); ++n) {
    double v = 1.0;
    for (int k = 0; k < N; ++k) {
      const double xlo = g.lo(k) * h, xhi = g.hi(k) * h;
      const double half = 0.5 * (xhi - xlo);
      v *= (g.coord(n, k) - xlo) * (xhi - g.coord(n, k)) / (half * half);
    }
    u[n] = v;
  }
  return u;
}

Field random_field(std::shared_ptr<const Grid> grid, std::uint64_t seed) {
  Field u(grid);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.1, 1.1);
  for (std::size_t n = 0; n < u.size(); ++n) u[n] = dist(rng);
  return u;
}

SolveReport minimize(std::shared_ptr<const Grid> grid,
                     const ProblemParams& params, const SolveConfig& cfg) {
  const bool pp = cfg.positive_part;
  Field u;
  switch (cfg.init) {
    case InitKind::PositiveBump: u = positive_bump(grid); break;
    case InitKind::Random: u = random_field(grid, cfg.seed); break;
    case InitKind::Given: u = cfg.init_field; break;
  }
  std::unique_ptr<Symmetrizer> sym;
  if (cfg.axisymmetrize) {
    sym = std::make_unique<Symmetrizer>(*grid);
    sym->apply(u);
  }
  u = project_field(u, params, pp);
  double phi = energy(u, params, pp).phi;

  SolveReport rep;
  rep.converged = false;
  for (int it = 0; it <= cfg.max_iters; ++it) {
    Field g = gradient(u, params, pp);
    if (sym) sym->apply(g);
    const double a = dirichlet_energy(u);
    const double proj = dirichlet_inner(g, u) / a;
    Field gt = g;
    for (std::size_t n = 0; n < gt.size(); ++n) gt[n] -= proj * u[n];
    const double gn2 = dirichlet_inner(gt, gt);
    const double gn = std::sqrt(std::max(gn2, 0.0));
    rep.trace.push_back({it, phi, gn});
    rep.iters = it;
    if (gn <= cfg.grad_tol) {
      rep.converged = true;
      break;
    }
    if (it == cfg.max_iters) break;

    double tau = cfg.step;
    bool accepted = false;
    while (tau > 1e-14) {
      Field cand(grid);
      for (std::size_t n = 0; n < cand.size(); ++n)
        cand[n] = u[n] - tau * gt[n];
      double phic = 0.0;
      bool ok = true;
      try {
        cand = project_field(cand, params, pp);
        phic = energy(cand, params, pp).phi;
      } catch (const std::exception&) {
        ok = false;  // degenerate trial step; shrink and retry
      }
      if (ok && phic <= phi - cfg.sufficient_decrease * tau * gn2) {
        u = std::move(cand);
        phi = phic;
        accepted = true;
        break;
      }
      tau *= cfg.armijo;
    }
    if (!accepted) break;  // line search stalled below machine step
  }

  rep.u_star = std::move(u);
  rep.quad = quadruple(rep.u_star, params, pp);
  rep.energy = energy_from_quadruple(rep.quad, params);
  rep.nehari_residual = std::abs(nehari_from_quadruple(rep.quad, params));
  rep.grad_norm = rep.trace.empty() ? 0.0 : rep.trace.back().grad_norm;
  rep.ps_bound_ok = ps_identity_ok(rep.quad, params, rep.energy);
  const double varrho = derived_constants(params).varrho;
  rep.multiplier_bound_ok =
      multiplier_bound_check(rep.quad, params) < -varrho * rep.quad.a;
  return rep;
}

SolveReport solve_half_space(const ProblemParams& params, double L, double h,
                             const SolveConfig& cfg) {
  ProblemParams two_term = params;
  two_term.lambda3 = 0.0;
  DomainSpec spec;
  spec.kind = DomainKind::HalfSpaceBox;
  spec.dim = params.dim;
  spec.extent = {L};
  auto grid = std::make_shared<Grid>(Grid::build(spec, h));
  SolveConfig hcfg = cfg;
  hcfg.axisymmetrize = true;
  return minimize(grid, two_term, hcfg);
}

std::vector<SolveReport> continuation_in_lambda3(
    std::shared_ptr<const Grid> grid, const ProblemParams& params,
    const std::vector<double>& lambda3_path, const SolveConfig& cfg) {
  if (lambda3_path.empty() || lambda3_path.front() != 0.0)
    throw std::invalid_argument("continuation: path must start at lambda3 = 0");
  std::vector<SolveReport> reports;
  SolveConfig step_cfg = cfg;
  step_cfg.positive_part = true;
  for (double l3 : lambda3_path) {
    ProblemParams step_params = params;
    step_params.lambda3 = l3;
    step_params.continuation_mode = true;
    if (!reports.empty()) {
      step_cfg.init = InitKind::Given;
      step_cfg.init_field = reports.back().u_star;
    }
    SolveReport rep = minimize(grid, step_params, step_cfg);
    if (!reports.empty()) {
      const double prev = reports.back().energy;
      rep.detached =
          std::abs(rep.energy - prev) > 0.2 * std::max(std::abs(prev), 1e-30);
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

}  // namespace nehari
