#pragma once

#include <stdexcept>
#include <string>

namespace nehari {

// Parameter set for the semilinear problem
//   Delta u + lambda1 |u|^{q1-2}u/|x|^{s1} + lambda2 |u|^{q2-2}u/|x|^{s2}
//           + lambda3 |u|^{p-1}u/|x|^{s3} = 0,   u = 0 on the boundary,
// with qi = 2(N-si)/(N-2) the Hardy-Sobolev critical exponents.
struct ProblemParams {
  int dim = 3;
  double s1 = 1.0;
  double s2 = 0.5;
  double s3 = 0.0;
  double p = 2.0;
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double lambda3 = 1.0;
  // Allows p == 2*(s3)-1 (three critical terms); only meaningful for
  // continuation runs with small |lambda3|.
  bool continuation_mode = false;
};

enum class CaseTag { Case1, Case2, Case3, Case4, Unsupported };

struct DerivedConstants {
  double twoStar1 = 0.0;  // 2*(s1)
  double twoStar2 = 0.0;  // 2*(s2)
  double twoStar3 = 0.0;  // 2*(s3)
  double s0 = 0.0;        // (N+2)/2 - p(N-2)/2
  double eta = 0.0;       // min{1/2 - 1/(p+1), 1/2 - 1/2*(s1)}
  double varrho = 0.0;    // min{2*(s1)-2, 2*(s2)-2, p-1}
};

class InvalidParams : public std::runtime_error {
 public:
  explicit InvalidParams(const std::string& what) : std::runtime_error(what) {}
};

// 2*(s) = 2(N-s)/(N-2). Throws InvalidParams for N < 3 or s outside [0,2].
double critical_exponent(int N, double s);

// Throws InvalidParams if the basic invariants fail (N >= 3, exponent
// ordering, lambda2 > 0, admissible p).
void validate(const ProblemParams& params);

// The four hypothesis sets under which the fibering map has a unique
// positive root. lambda3 == 0 (two-term functional) is accepted and routed
// to Case1/Case3 by the sign of lambda1.
CaseTag classify_case(const ProblemParams& params);

DerivedConstants derived_constants(const ProblemParams& params);

const char* case_name(CaseTag tag);

}  // namespace nehari
