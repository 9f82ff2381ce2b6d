#ifndef SNS_EXPONENTS_HPP
#define SNS_EXPONENTS_HPP

#include <string>

namespace sns {

constexpr double kRelationTolerance = 1e-12;

// Solution space L^q_alpha(L^p): n < p < inf, 2 < q <= inf and
// 2 alpha = 1 - n/p - 2/q >= 0.
struct SolutionExponents {
  int n = 2;
  double p = 4.0;
  double q = 8.0;
  double alpha = 0.125;
};
void validate(const SolutionExponents& e);

// Noise space L^q_{alpha2}(L^{p2}): p2 <= p, alpha <= alpha2 and
// (n/p2 - n/p) + 2 (alpha2 - alpha) = 1.
struct NoiseExponents {
  double p2 = 2.0;
  double alpha2 = 0.375;
};
void validate(const SolutionExponents& sol, const NoiseExponents& e);

// Forcing space L^{q1}_{alpha1}(L^{p1}): q1 <= q, alpha <= alpha1 < 1 - 1/q1
// and (n/p1 - n/p) + (2/q1 - 2/q) + 2 (alpha1 - alpha) = 1.
struct ForcingExponents {
  double p1 = 2.0;
  double q1 = 4.0;
  double alpha1 = 0.25;
};
void validate(const SolutionExponents& sol, const ForcingExponents& e);

// Duality estimate tuple: Besov target (p, q, alpha) and source
// (p1, q1, alpha1). Requires 1 < q1 <= q < inf, 0 <= alpha1 < 1 - 1/q1,
// 0 < lambda < 1 with lambda = 1/2 - (n/2)(1/p1' - 1/p') - alpha, and the
// scaling relation (n/p1 - n/p) + (2/q1 - 2/q) + 2 (alpha1 - alpha) = 1.
struct DualityExponents {
  int n = 2;
  double p = 2.0, q = 4.0, alpha = 0.0;
  double p1 = 2.0, q1 = 2.0, alpha1 = 0.25;
  double lambda() const;
};
void validate(const DualityExponents& e);

// Linear stochastic estimate: 2 <= p < inf, 2 < q < inf,
// 0 <= 2 alpha < 1 - 1/p - 2/q, plus the noise relation.
struct MomentExponents {
  int n = 2;
  double p = 4.0, q = 4.0, alpha = 0.0;
  double p2 = 2.0, alpha2 = 0.25;
};
void validate(const MomentExponents& e);

// Weighted Hardy-Littlewood-Sobolev: 0 < lambda < 1, 1 < p <= q < inf,
// beta <= alpha, 0 < alpha p + 1 < p, 0 < beta q + 1 < q and
// 1 + 1/q + beta = 1/p + lambda + alpha.
struct HlsExponents {
  double lambda = 0.5;
  double p = 2.0;
  double q = 4.0;
  double alpha = 0.25;
  double beta = 0.0;
};
void validate(const HlsExponents& e);

}  // namespace sns

#endif
