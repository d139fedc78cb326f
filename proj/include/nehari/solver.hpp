#pragma once

#include <cstdint>
#include <vector>

#include "nehari/fibering.hpp"
#include "nehari/functional.hpp"
#include "nehari/grid.hpp"
#include "nehari/params.hpp"

namespace nehari {

enum class InitKind { PositiveBump, Random, Given };

struct SolveConfig {
  int max_iters = 2000;
  double grad_tol = 1e-6;
  double step = 1.0;
  double armijo = 0.5;           // backtracking factor
  double sufficient_decrease = 1e-4;
  std::uint64_t seed = 1;
  bool positive_part = false;
  bool axisymmetrize = false;    // average over primed-index symmetry orbits
  InitKind init = InitKind::PositiveBump;
  Field init_field;              // used when init == Given
};

struct TracePoint {
  int iter = 0;
  double energy = 0.0;
  double grad_norm = 0.0;
};

struct SolveReport {
  Field u_star;
  double energy = 0.0;
  double grad_norm = 0.0;
  double nehari_residual = 0.0;
  int iters = 0;
  bool converged = false;
  bool ps_bound_ok = false;          // case-wise energy identity at u_star
  bool multiplier_bound_ok = false;  // <J'(u), u> < -varrho * a
  bool detached = false;             // continuation energy jump > 20%
  std::vector<TracePoint> trace;
  Quadruple quad;
};

// Projected gradient descent on the Nehari manifold: each accepted iterate
// is scaled back onto the manifold; descent directions are the tangential
// part of the Dirichlet-metric gradient with Armijo backtracking.
SolveReport minimize(std::shared_ptr<const Grid> grid,
                     const ProblemParams& params, const SolveConfig& cfg);

// Two-term limiting problem on a truncated half-space box with symmetrized
// descent (lambda3 is forced to 0). The report's energy approximates the
// least energy of the half-space problem.
SolveReport solve_half_space(const ProblemParams& params, double L, double h,
                             const SolveConfig& cfg);

// Continuation in lambda3 starting from lambda3 = 0; each step is
// initialized from the previous solution with the positive-part functional
// forced on. Flags detachment when the energy jumps by more than 20%.
std::vector<SolveReport> continuation_in_lambda3(
    std::shared_ptr<const Grid> grid, const ProblemParams& params,
    const std::vector<double>& lambda3_path, const SolveConfig& cfg);

// Strictly positive product-bump initial field.
Field positive_bump(std::shared_ptr<const Grid> grid);
Field random_field(std::shared_ptr<const Grid> grid, std::uint64_t seed);

}  // namespace nehari
