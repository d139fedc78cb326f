#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "nehari/grid.hpp"
#include "nehari/params.hpp"
#include "nehari/solver.hpp"

namespace nehari {

class OutOfCoverage : public std::runtime_error {
 public:
  explicit OutOfCoverage(const std::string& what) : std::runtime_error(what) {}
};

struct ScalingCheck {
  double lhs = 0.0;           // A_{lambda,1}(v), v = lambda2^{1/(q2-2)} u
  double rhs = 0.0;           // lambda2^{2/(q2-2)} A_{lambda1,lambda2}(u)
  double lambda_reduced = 0.0;  // lambda1 lambda2^{(2-q1)/(q2-2)}
};

struct ConcentrationProfile {
  std::vector<double> radii;
  std::vector<double> q_values;
  std::optional<double> r_star;
  double delta = 0.0;        // level whose crossing defines r_star
  double mu_s_floor = 1.0;   // configured stand-in for mu_s(R^N)
};

struct TestFunctionReport {
  std::vector<double> epsilons;
  std::vector<double> max_energy_over_t;  // max_t Phi(t v_eps) per epsilon
  std::vector<double> energy_at_top;      // Phi(T v_eps) at the t-grid top
  double c_limit = 0.0;
  double K1 = 0.0, K2 = 0.0, K3 = 0.0;
};

// Two-term energy A_{lambda1,lambda2}(u) = a/2 - lambda1 b/q1 - lambda2 c/q2.
double two_term_energy(const Field& u, const ProblemParams& params);

// Discrete check of the reduction A_{lambda,1}(v) =
// lambda2^{2/(q2-2)} A_{lambda1,lambda2}(u); exact up to roundoff since
// every term is homogeneous on the same grid.
ScalingCheck scaling_identity_check(const Field& u,
                                    const ProblemParams& params);

// True iff the bounded-domain energy is strictly below the half-space one.
bool threshold_compare(const SolveReport& domain_report,
                       const SolveReport& halfspace_report);

// Levy-type concentration function: mass of the critical terms inside
// B(0, r). With lambda1 < 0 the first term is dropped. delta <= 0 selects
// half the saturation value.
ConcentrationProfile concentration_profile(const Field& u,
                                           const ProblemParams& params,
                                           const std::vector<double>& radii,
                                           double delta = 0.0);

// v(x) = r^{(N-2)/2} u(r x) re-interpolated onto u's grid. Throws
// OutOfCoverage when the rescaled support exceeds the grid.
Field rescale(const Field& u, double r);

// Max over the three singular terms of the relative defect
// |T(u+bump) - T(u) - T(bump)| / T(u+bump).
double brezis_lieb_defect(const Field& u, const Field& bump,
                          const ProblemParams& params);

// Transplants a half-space profile into the perturbed domain through the
// boundary-flattening map, applies the radial cutoff, and scans the
// fibering ray of the result. c_limit is the reference half-space energy.
TestFunctionReport test_function_scan(const Field& halfspace_u,
                                      const DomainSpec& spec,
                                      const ProblemParams& params,
                                      const std::vector<double>& epsilons,
                                      double c_limit);

}  // namespace nehari
