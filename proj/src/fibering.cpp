#include "nehari/fibering.hpp"

#include <cmath>

namespace nehari {

double g_eval(const Quadruple& quad, const ProblemParams& params, double t) {
  const DerivedConstants dc = derived_constants(params);
  const double coef[3] = {-params.lambda1 * quad.b, -params.lambda2 * quad.c,
                          -params.lambda3 * quad.d};
  const double expo[3] = {dc.twoStar1 - 2.0, dc.twoStar2 - 2.0,
                          params.p - 1.0};
  double g = quad.a;
  bool overflow = false;
  for (int i = 0; i < 3; ++i) {
    if (coef[i] == 0.0) continue;  // avoid 0 * inf when t is huge
    const double v = coef[i] * std::pow(t, expo[i]);
    if (std::isfinite(v))
      g += v;
    else
      overflow = true;
  }
  if (!overflow) return g;
  // Crossings can sit at astronomical t when exponents nearly coincide.
  // Rescale by t^{-emax} so every power is <= 1; only the sign survives,
  // which is all the bracketing logic needs.
  double emax = 0.0;
  for (int i = 0; i < 3; ++i)
    if (coef[i] != 0.0) emax = std::max(emax, expo[i]);
  double s = quad.a * std::pow(t, -emax);
  for (int i = 0; i < 3; ++i)
    if (coef[i] != 0.0) s += coef[i] * std::pow(t, expo[i] - emax);
  return s;
}

FiberingRoot project(const Quadruple& quad, const ProblemParams& params) {
  if (!(quad.a > 0.0))
    throw std::invalid_argument("fibering::project: requires a > 0");
  if (classify_case(params) == CaseTag::Unsupported)
    throw std::invalid_argument("fibering::project: unsupported case");

  // g(0) = a > 0 and g -> -inf in every supported case; double until the
  // sign flips.
  double t_hi = 1.0;
  while (g_eval(quad, params, t_hi) >= 0.0) {
    t_hi *= 2.0;
    // Crossings can sit at astronomical t when 2*(s1) and 2*(s2) nearly
    // coincide; keep doubling until pow overflows the negative terms.
    if (t_hi > 1e250)
      throw NoRoot("fibering::project: g stayed positive up to overflow bound");
  }

  // Geometric sign scan over (0, 2 t_hi]: locates the first crossing and
  // certifies that it is the only one.
  const int scan_points = 10000;
  const double scan_lo = t_hi * 1e-9;
  const double scan_hi = 2.0 * t_hi;
  const double ratio = std::pow(scan_hi / scan_lo, 1.0 / (scan_points - 1));
  int sign_changes = 0;
  double first_lo = 0.0, first_hi = 0.0;
  bool prev_pos = true;  // g(0) = a > 0
  double prev_t = 0.0;
  double t = scan_lo;
  for (int i = 0; i < scan_points; ++i, t *= ratio) {
    const bool pos = g_eval(quad, params, t) > 0.0;
    if (pos != prev_pos) {
      ++sign_changes;
      if (sign_changes == 1) {
        first_lo = prev_t;
        first_hi = t;
      }
    }
    prev_pos = pos;
    prev_t = t;
  }
  if (sign_changes == 0)
    throw NoRoot("fibering::project: sign scan found no crossing");
  if (sign_changes > 1)
    throw AmbiguousRoot("fibering::project: sign scan found multiple crossings");

  FiberingRoot root;
  root.certified_unique = !prev_pos;  // g < 0 at and beyond the scan top
  root.t_lo = first_lo;
  root.t_hi = first_hi;
  double lo = first_lo, hi = first_hi;
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (g_eval(quad, params, mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  root.t_u = 0.5 * (lo + hi);
  root.residual = std::abs(g_eval(quad, params, root.t_u));
  return root;
}

Field project_field(const Field& u, const ProblemParams& params,
                    bool positive_part) {
  const Quadruple q = quadruple(u, params, positive_part);
  if (!(q.a > 0.0))
    throw std::invalid_argument("project_field: field must be nonzero");
  const FiberingRoot root = project(q, params);
  Field out = u;
  for (std::size_t n = 0; n < out.size(); ++n) out[n] *= root.t_u;
  return out;
}

double multiplier_bound_check(const Quadruple& quad,
                              const ProblemParams& params) {
  const DerivedConstants dc = derived_constants(params);
  return 2.0 * quad.a - dc.twoStar1 * params.lambda1 * quad.b -
         dc.twoStar2 * params.lambda2 * quad.c -
         (params.p + 1.0) * params.lambda3 * quad.d;
}

}  // namespace nehari
