#include "nehari/sampling.hpp"

#include <algorithm>

namespace nehari {

ProblemParams sample_case_params(CaseTag tag, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ProblemParams p;
  p.dim = 3;
  for (;;) {
    p.s2 = 0.05 + 1.8 * unit(rng);
    p.s1 = p.s2 + (1.95 - p.s2) * unit(rng);
    if (p.s1 < 1.99 && p.s1 - p.s2 > 0.01) break;
  }
  p.s3 = 1.9 * unit(rng);
  const double q1 = critical_exponent(p.dim, p.s1);
  const double q2 = critical_exponent(p.dim, p.s2);
  const double q3 = critical_exponent(p.dim, p.s3);
  const double mag1 = 0.1 + 1.9 * unit(rng);
  const double mag3 = 0.1 + 1.9 * unit(rng);
  p.lambda2 = 0.1 + 1.9 * unit(rng);
  auto pick_p = [&](double lo, double hi) {
    return lo + (hi - lo) * (0.05 + 0.9 * unit(rng));
  };
  switch (tag) {
    case CaseTag::Case1:
      p.lambda1 = mag1;
      p.lambda3 = mag3;
      p.p = pick_p(1.0, q3 - 1.0);
      break;
    case CaseTag::Case2:
      p.lambda1 = mag1;
      p.lambda3 = -mag3;
      p.p = pick_p(1.0, std::min(q1 - 1.0, q3 - 1.0));
      break;
    case CaseTag::Case3:
      // needs q1-1 <= p < q3-1, so force s3 < s1
      while (p.s3 >= p.s1 - 0.02) p.s3 = p.s1 * unit(rng);
      p.lambda1 = -mag1;
      p.lambda3 = mag3;
      p.p = pick_p(critical_exponent(p.dim, p.s1) - 1.0,
                   critical_exponent(p.dim, p.s3) - 1.0);
      break;
    case CaseTag::Case4:
      p.lambda1 = -mag1;
      p.lambda3 = -mag3;
      p.p = pick_p(1.0, std::min(q2 - 1.0, q3 - 1.0));
      break;
    default:
      throw std::invalid_argument("sample_case_params: unsupported tag");
  }
  return p;
}

Quadruple sample_quadruple(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Quadruple q;
  q.a = 0.1 + 4.9 * unit(rng);
  q.b = 0.05 + 4.95 * unit(rng);
  q.c = 0.05 + 4.95 * unit(rng);
  q.d = 0.05 + 4.95 * unit(rng);
  return q;
}

}  // namespace nehari
