#include "nehari/params.hpp"

#include <cmath>

namespace nehari {

double critical_exponent(int N, double s) {
  if (N < 3) throw InvalidParams("critical_exponent: N must be >= 3");
  if (s < 0.0 || s > 2.0)
    throw InvalidParams("critical_exponent: s must lie in [0,2]");
  return 2.0 * (N - s) / (N - 2);
}

void validate(const ProblemParams& params) {
  if (params.dim < 3) throw InvalidParams("dim N must be >= 3");
  if (!(params.s2 > 0.0 && params.s2 < params.s1 && params.s1 < 2.0))
    throw InvalidParams("exponents must satisfy 0 < s2 < s1 < 2");
  if (!(params.s3 >= 0.0 && params.s3 < 2.0))
    throw InvalidParams("s3 must lie in [0,2)");
  if (!(params.lambda2 > 0.0)) throw InvalidParams("lambda2 > 0 required");
  const double q3 = critical_exponent(params.dim, params.s3);
  if (!(params.p > 1.0)) throw InvalidParams("p > 1 required");
  if (params.continuation_mode) {
    if (!(params.p <= q3 - 1.0))
      throw InvalidParams("p <= 2*(s3)-1 required in continuation mode");
  } else {
    if (!(params.p < q3 - 1.0))
      throw InvalidParams("p < 2*(s3)-1 required (strict outside continuation mode)");
  }
}

CaseTag classify_case(const ProblemParams& params) {
  validate(params);
  const double q1 = critical_exponent(params.dim, params.s1);
  const double q2 = critical_exponent(params.dim, params.s2);
  // lambda3 == 0 drops the p-term entirely; the fibering argument then
  // reduces to the two-term versions of cases 1 and 3.
  if (params.lambda3 == 0.0)
    return params.lambda1 >= 0.0 ? CaseTag::Case1 : CaseTag::Case3;
  if (params.lambda1 >= 0.0) {
    if (params.lambda3 > 0.0) return CaseTag::Case1;
    return params.p <= q1 - 1.0 ? CaseTag::Case2 : CaseTag::Unsupported;
  }
  if (params.lambda3 > 0.0)
    return params.p >= q1 - 1.0 ? CaseTag::Case3 : CaseTag::Unsupported;
  return params.p < q2 - 1.0 ? CaseTag::Case4 : CaseTag::Unsupported;
}

DerivedConstants derived_constants(const ProblemParams& params) {
  validate(params);
  DerivedConstants d;
  d.twoStar1 = critical_exponent(params.dim, params.s1);
  d.twoStar2 = critical_exponent(params.dim, params.s2);
  d.twoStar3 = critical_exponent(params.dim, params.s3);
  const double N = params.dim;
  d.s0 = 0.5 * (N + 2.0) - 0.5 * (N - 2.0) * params.p;
  d.eta = std::min(0.5 - 1.0 / (params.p + 1.0), 0.5 - 1.0 / d.twoStar1);
  d.varrho = std::min({d.twoStar1 - 2.0, d.twoStar2 - 2.0, params.p - 1.0});
  return d;
}

const char* case_name(CaseTag tag) {
  switch (tag) {
    case CaseTag::Case1: return "Case1";
    case CaseTag::Case2: return "Case2";
    case CaseTag::Case3: return "Case3";
    case CaseTag::Case4: return "Case4";
    default: return "Unsupported";
  }
}

}  // namespace nehari
