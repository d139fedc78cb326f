#pragma once

#include <stdexcept>

#include "nehari/grid.hpp"
#include "nehari/params.hpp"

namespace nehari {

// The four scalars that fully determine the fibering map:
//   a = ||u||^2, and the three weighted integrals at exponents
//   2*(s1), 2*(s2), p+1 with weights s1, s2, s3.
struct Quadruple {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
};

struct EnergyReport {
  double phi = 0.0;
  double j = 0.0;
};

class LinearSolveFailure : public std::runtime_error {
 public:
  explicit LinearSolveFailure(const std::string& what)
      : std::runtime_error(what) {}
};

// With positive_part set, |u| is replaced by u_+ = max(u,0) in the three
// singular terms (the modified functional used for positive solutions).
Quadruple quadruple(const Field& u, const ProblemParams& params,
                    bool positive_part = false);

double energy_from_quadruple(const Quadruple& q, const ProblemParams& params);
double nehari_from_quadruple(const Quadruple& q, const ProblemParams& params);

EnergyReport energy(const Field& u, const ProblemParams& params,
                    bool positive_part = false);

// Nodal residual r with r . v = <Phi'(u), v> for every nodal vector v.
Field residual(const Field& u, const ProblemParams& params,
               bool positive_part = false);

// Riesz representative of Phi'(u) in the discrete Dirichlet inner product:
// solves A g = residual(u) with the stiffness operator A by conjugate
// gradients (relative tolerance 1e-10).
Field gradient(const Field& u, const ProblemParams& params,
               bool positive_part = false);

// Conjugate-gradient solve A x = rhs for the SPD stiffness operator.
Field stiffness_solve(const Field& rhs, double rel_tol = 1e-10);

// Discrete Dirichlet inner product u . A v.
double dirichlet_inner(const Field& u, const Field& v);

double dot(const Field& u, const Field& v);

}  // namespace nehari
