#include "nehari/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "nehari/fibering.hpp"
#include "nehari/functional.hpp"

namespace nehari {

double two_term_energy(const Field& u, const ProblemParams& params) {
  const DerivedConstants dc = derived_constants(params);
  const double a = dirichlet_energy(u);
  const double b = singular_integral(u, dc.twoStar1, params.s1);
  const double c = singular_integral(u, dc.twoStar2, params.s2);
  return 0.5 * a - params.lambda1 / dc.twoStar1 * b -
         params.lambda2 / dc.twoStar2 * c;
}

ScalingCheck scaling_identity_check(const Field& u,
                                    const ProblemParams& params) {
  const DerivedConstants dc = derived_constants(params);
  const double q1 = dc.twoStar1, q2 = dc.twoStar2;
  ScalingCheck chk;
  chk.lambda_reduced =
      params.lambda1 * std::pow(params.lambda2, (2.0 - q1) / (q2 - 2.0));
  const double mu = std::pow(params.lambda2, 1.0 / (q2 - 2.0));
  Field v = u;
  for (std::size_t n = 0; n < v.size(); ++n) v[n] *= mu;
  ProblemParams reduced = params;
  reduced.lambda1 = chk.lambda_reduced;
  reduced.lambda2 = 1.0;
  chk.lhs = two_term_energy(v, reduced);
  chk.rhs = std::pow(params.lambda2, 2.0 / (q2 - 2.0)) *
            two_term_energy(u, params);
  return chk;
}

bool threshold_compare(const SolveReport& domain_report,
                       const SolveReport& halfspace_report) {
  return domain_report.energy < halfspace_report.energy;
}

ConcentrationProfile concentration_profile(const Field& u,
                                           const ProblemParams& params,
                                           const std::vector<double>& radii,
                                           double delta) {
  const DerivedConstants dc = derived_constants(params);
  const Grid& g = u.grid();
  const double vol = std::pow(g.spacing(), g.dim());
  const bool keep_first = params.lambda1 > 0.0;

  ConcentrationProfile prof;
  prof.radii = radii;
  std::sort(prof.radii.begin(), prof.radii.end());
  prof.q_values.assign(prof.radii.size(), 0.0);
  double total = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n) {
    const double v = std::abs(u[n]);
    if (v == 0.0) continue;
    const double rad = g.radius(n);
    double m = params.lambda2 * std::pow(v, dc.twoStar2) *
               std::pow(rad, -params.s2);
    if (keep_first)
      m += params.lambda1 * std::pow(v, dc.twoStar1) *
           std::pow(rad, -params.s1);
    m *= vol;
    total += m;
    for (std::size_t i = 0; i < prof.radii.size(); ++i)
      if (rad < prof.radii[i]) prof.q_values[i] += m;
  }
  prof.delta = delta > 0.0 ? delta : 0.5 * total;
  double prev_r = 0.0, prev_q = 0.0;
  for (std::size_t i = 0; i < prof.radii.size(); ++i) {
    if (prof.q_values[i] >= prof.delta && prof.delta > 0.0) {
      const double dq = prof.q_values[i] - prev_q;
      prof.r_star = dq > 0.0
                        ? prev_r + (prof.delta - prev_q) / dq *
                                       (prof.radii[i] - prev_r)
                        : prof.radii[i];
      break;
    }
    prev_r = prof.radii[i];
    prev_q = prof.q_values[i];
  }
  return prof;
}

Field rescale(const Field& u, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("rescale: r must be > 0");
  const Grid& g = u.grid();
  const int N = g.dim();
  const double h = g.spacing();
  for (std::size_t n = 0; n < g.size(); ++n) {
    if (u[n] == 0.0) continue;
    for (int k = 0; k < N; ++k) {
      const double y = g.coord(n, k) / r;
      if (y < g.lo(k) * h || y > g.hi(k) * h)
        throw OutOfCoverage("rescale: support exceeds the target grid");
    }
  }
  Field v(u.grid_ptr());
  const double amp = std::pow(r, 0.5 * (N - 2));
  double y[64];
  for (std::size_t n = 0; n < g.size(); ++n) {
    for (int k = 0; k < N; ++k) y[k] = r * g.coord(n, k);
    v[n] = amp * u.sample(y);
  }
  return v;
}

double brezis_lieb_defect(const Field& u, const Field& bump,
                          const ProblemParams& params) {
  const DerivedConstants dc = derived_constants(params);
  Field sum = u;
  for (std::size_t n = 0; n < sum.size(); ++n) sum[n] += bump[n];
  const double qs[3] = {dc.twoStar1, dc.twoStar2, params.p + 1.0};
  const double ss[3] = {params.s1, params.s2, params.s3};
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double tsum = singular_integral(sum, qs[i], ss[i]);
    const double defect = std::abs(tsum - singular_integral(u, qs[i], ss[i]) -
                                   singular_integral(bump, qs[i], ss[i]));
    if (tsum > 0.0) worst = std::max(worst, defect / tsum);
  }
  return worst;
}

namespace {

// Quintic taper: 1 on [0, r0/2], 0 beyond r0, C^2 matched in between.
double cutoff(double r, double r0) {
  if (r <= 0.5 * r0) return 1.0;
  if (r >= r0) return 0.0;
  const double t = (r - 0.5 * r0) / (0.5 * r0);
  return 1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
}

}  // namespace

TestFunctionReport test_function_scan(const Field& halfspace_u,
                                      const DomainSpec& spec,
                                      const ProblemParams& params,
                                      const std::vector<double>& epsilons,
                                      double c_limit) {
  if (spec.kind != DomainKind::PerturbedBoundary)
    throw std::invalid_argument("test_function_scan: needs PerturbedBoundary");
  if (!(mean_curvature_at_origin(spec) < 0.0))
    throw std::invalid_argument("test_function_scan: needs H(0) < 0");
  const Grid& hg = halfspace_u.grid();
  const int N = hg.dim();
  const double h = hg.spacing();
  const double L = spec.extent.at(0);
  const double r0 = 0.75 * L;

  TestFunctionReport rep;
  rep.c_limit = c_limit;
  rep.epsilons = epsilons;

  // Curvature-weighted integrals of the half-space profile.
  {
    const DerivedConstants dc = derived_constants(params);
    const double vol = std::pow(h, N);
    for (std::size_t n = 0; n < hg.size(); ++n) {
      const double v = std::abs(halfspace_u[n]);
      if (v == 0.0) continue;
      const double yN = hg.coord(n, N - 1);
      const double rad = hg.radius(n);
      double rp2 = 0.0;
      for (int k = 0; k + 1 < N; ++k) rp2 += hg.coord(n, k) * hg.coord(n, k);
      rep.K1 += std::pow(v, dc.twoStar1) * yN *
                std::pow(rad, -(params.s1 + 2.0)) * rp2 * vol;
      rep.K2 += std::pow(v, dc.twoStar2) * yN *
                std::pow(rad, -(params.s2 + 2.0)) * rp2 * vol;
      // wall-adjacent layer: one-sided normal derivative at x_N = 0
      if (hg.index(n, N - 1) == 1)
        rep.K3 += (halfspace_u[n] / h) * (halfspace_u[n] / h) * rp2 *
                  std::pow(h, N - 1);
    }
  }

  auto grid = std::make_shared<Grid>(Grid::build(spec, h));
  double y[64];
  for (double eps : epsilons) {
    if (eps > 0.5 * r0)
      throw OutOfCoverage("test_function_scan: epsilon too large for cutoff");
    const double amp = std::pow(eps, -0.5 * (N - 2));
    Field vhat(grid);
    for (std::size_t n = 0; n < grid->size(); ++n) {
      double xp[64];
      for (int k = 0; k + 1 < N; ++k) {
        xp[k] = grid->coord(n, k);
        y[k] = xp[k] / eps;
      }
      y[N - 1] =
          (grid->coord(n, N - 1) - boundary_height(spec, xp)) / eps;
      const double val = amp * halfspace_u.sample(y);
      vhat[n] = cutoff(grid->radius(n), r0) * val;
    }
    const Quadruple q = quadruple(vhat, params);
    double t_center = 1.0;
    try {
      t_center = project(q, params).t_u;
    } catch (const std::exception&) {
      // fall back to an absolute t-window
    }
    const int points = 200;
    const double t_lo = 1e-2 * t_center, t_hi = 1e2 * t_center;
    const double ratio = std::pow(t_hi / t_lo, 1.0 / (points - 1));
    double best = -1e300, top = 0.0;
    double t = t_lo;
    for (int i = 0; i < points; ++i, t *= ratio) {
      Quadruple qs;
      const DerivedConstants dc = derived_constants(params);
      qs.a = q.a * t * t;
      qs.b = q.b * std::pow(t, dc.twoStar1);
      qs.c = q.c * std::pow(t, dc.twoStar2);
      qs.d = q.d * std::pow(t, params.p + 1.0);
      const double phi = energy_from_quadruple(qs, params);
      best = std::max(best, phi);
      top = phi;
    }
    rep.max_energy_over_t.push_back(best);
    rep.energy_at_top.push_back(top);
  }
  return rep;
}

}  // namespace nehari
