#pragma once

#include <stdexcept>

#include "nehari/functional.hpp"
#include "nehari/params.hpp"

namespace nehari {

struct FiberingRoot {
  double t_u = 0.0;
  bool certified_unique = false;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double residual = 0.0;  // |g(t_u)|
};

class NoRoot : public std::runtime_error {
 public:
  explicit NoRoot(const std::string& what) : std::runtime_error(what) {}
};

class AmbiguousRoot : public std::runtime_error {
 public:
  explicit AmbiguousRoot(const std::string& what) : std::runtime_error(what) {}
};

// g(t) = a - lambda1 b t^{2*(s1)-2} - lambda2 c t^{2*(s2)-2}
//          - lambda3 d t^{p-1}, the derivative of t -> Phi(tu) divided by t.
double g_eval(const Quadruple& quad, const ProblemParams& params, double t);

// Smallest positive root of g with a uniqueness certificate from a
// geometric sign scan (10^4 points). Bisection to 1e-12 relative.
FiberingRoot project(const Quadruple& quad, const ProblemParams& params);

// Scales u onto the Nehari manifold: returns t_u * u.
Field project_field(const Field& u, const ProblemParams& params,
                    bool positive_part = false);

// <J'(u), u> = 2a - 2*(s1) lambda1 b - 2*(s2) lambda2 c - (p+1) lambda3 d;
// on the manifold this is < -varrho * a.
double multiplier_bound_check(const Quadruple& quad,
                              const ProblemParams& params);

}  // namespace nehari
