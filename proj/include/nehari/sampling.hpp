#pragma once

#include <random>

#include "nehari/functional.hpp"
#include "nehari/params.hpp"

namespace nehari {

// Draws a parameter set satisfying the hypotheses of the requested case
// (N = 3, exponents sampled with 0 < s2 < s1 < 2) together with a random
// positive quadruple. Used by the verify command and the diagnostics.
ProblemParams sample_case_params(CaseTag tag, std::mt19937_64& rng);
Quadruple sample_quadruple(std::mt19937_64& rng);

}  // namespace nehari
