#include "nehari/functional.hpp"

#include <cmath>

namespace nehari {

namespace {

double weighted_power_sum(const Field& u, double q, double s,
                          bool positive_part) {
  const Grid& g = u.grid();
  const double vol = std::pow(g.spacing(), g.dim());
  double sum = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n) {
    const double v = positive_part ? std::max(u[n], 0.0) : std::abs(u[n]);
    if (v == 0.0) continue;
    sum += std::pow(v, q) * std::pow(g.radius(n), -s);
  }
  return vol * sum;
}

}  // namespace

double dot(const Field& u, const Field& v) {
  double sum = 0.0;
  for (std::size_t n = 0; n < u.size(); ++n) sum += u[n] * v[n];
  return sum;
}

double dirichlet_inner(const Field& u, const Field& v) {
  Field av(v.grid_ptr());
  apply_stiffness(v, av);
  return dot(u, av);
}

Quadruple quadruple(const Field& u, const ProblemParams& params,
                    bool positive_part) {
  const DerivedConstants dc = derived_constants(params);
  Quadruple q;
  q.a = dirichlet_energy(u);
  q.b = weighted_power_sum(u, dc.twoStar1, params.s1, positive_part);
  q.c = weighted_power_sum(u, dc.twoStar2, params.s2, positive_part);
  q.d = weighted_power_sum(u, params.p + 1.0, params.s3, positive_part);
  return q;
}

double energy_from_quadruple(const Quadruple& q, const ProblemParams& params) {
  const DerivedConstants dc = derived_constants(params);
  return 0.5 * q.a - params.lambda1 / dc.twoStar1 * q.b -
         params.lambda2 / dc.twoStar2 * q.c -
         params.lambda3 / (params.p + 1.0) * q.d;
}

double nehari_from_quadruple(const Quadruple& q, const ProblemParams& params) {
  return q.a - params.lambda1 * q.b - params.lambda2 * q.c -
         params.lambda3 * q.d;
}

EnergyReport energy(const Field& u, const ProblemParams& params,
                    bool positive_part) {
  const Quadruple q = quadruple(u, params, positive_part);
  return {energy_from_quadruple(q, params), nehari_from_quadruple(q, params)};
}

Field residual(const Field& u, const ProblemParams& params,
               bool positive_part) {
  const DerivedConstants dc = derived_constants(params);
  const Grid& g = u.grid();
  const double vol = std::pow(g.spacing(), g.dim());
  Field r(u.grid_ptr());
  apply_stiffness(u, r);
  for (std::size_t n = 0; n < g.size(); ++n) {
    const double un = u[n];
    const double v = positive_part ? std::max(un, 0.0) : std::abs(un);
    if (v == 0.0) continue;
    const double sgn = positive_part ? 1.0 : (un > 0.0 ? 1.0 : -1.0);
    const double rad = g.radius(n);
    double f = params.lambda1 * std::pow(v, dc.twoStar1 - 1.0) *
                   std::pow(rad, -params.s1) +
               params.lambda2 * std::pow(v, dc.twoStar2 - 1.0) *
                   std::pow(rad, -params.s2) +
               params.lambda3 * std::pow(v, params.p) *
                   std::pow(rad, -params.s3);
    r[n] -= vol * sgn * f;
  }
  return r;
}

Field stiffness_solve(const Field& rhs, double rel_tol) {
  const auto gp = rhs.grid_ptr();
  Field x(gp), r = rhs, pdir = rhs, ap(gp);
  double rr = dot(r, r);
  const double rr0 = rr;
  if (rr0 == 0.0) return x;
  const std::size_t max_iter = 20 * rhs.size() + 200;
  for (std::size_t it = 0; it < max_iter; ++it) {
    apply_stiffness(pdir, ap);
    const double alpha = rr / dot(pdir, ap);
    for (std::size_t n = 0; n < x.size(); ++n) {
      x[n] += alpha * pdir[n];
      r[n] -= alpha * ap[n];
    }
    const double rr_new = dot(r, r);
    if (rr_new <= rel_tol * rel_tol * rr0) return x;
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t n = 0; n < x.size(); ++n) pdir[n] = r[n] + beta * pdir[n];
  }
  throw LinearSolveFailure("stiffness_solve: CG did not converge");
}

Field gradient(const Field& u, const ProblemParams& params,
               bool positive_part) {
  return stiffness_solve(residual(u, params, positive_part));
}

}  // namespace nehari
