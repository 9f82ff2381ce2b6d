#include "sns/exponents.hpp"

#include <cmath>
#include <sstream>

#include "sns/errors.hpp"

namespace sns {

namespace {

void require(bool ok, const std::string& relation) {
  if (!ok) throw ConfigurationError("exponent relation violated: " + relation);
}

bool close(double a, double b) { return std::abs(a - b) <= kRelationTolerance; }

double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

void check_noise(int n, double p, double alpha, double p2, double alpha2) {
  require(p2 <= p, "p2 <= p");
  require(alpha <= alpha2, "alpha <= alpha2");
  require(close(n * inv(p2) - n * inv(p) + 2.0 * (alpha2 - alpha), 1.0),
          "(n/p2 - n/p) + 2(alpha2 - alpha) = 1");
}

}  // namespace

void validate(const SolutionExponents& e) {
  require(e.n == 2 || e.n == 3, "n in {2, 3}");
  require(e.p > e.n && std::isfinite(e.p), "n < p < inf");
  require(e.q > 2.0, "2 < q <= inf");
  require(close(2.0 * e.alpha, 1.0 - e.n / e.p - 2.0 * inv(e.q)), "2 alpha = 1 - n/p - 2/q");
  require(e.alpha >= -kRelationTolerance, "2 alpha >= 0");
}

void validate(const SolutionExponents& sol, const NoiseExponents& e) {
  validate(sol);
  check_noise(sol.n, sol.p, sol.alpha, e.p2, e.alpha2);
}

void validate(const SolutionExponents& sol, const ForcingExponents& e) {
  validate(sol);
  require(e.q1 <= sol.q, "q1 <= q");
  require(sol.alpha <= e.alpha1 + kRelationTolerance, "alpha <= alpha1");
  require(e.alpha1 < 1.0 - inv(e.q1), "alpha1 < 1 - 1/q1");
  require(close(sol.n * inv(e.p1) - sol.n * inv(sol.p) + 2.0 * inv(e.q1) - 2.0 * inv(sol.q) +
                    2.0 * (e.alpha1 - sol.alpha),
                1.0),
          "(n/p1 - n/p) + (2/q1 - 2/q) + 2(alpha1 - alpha) = 1");
}

double DualityExponents::lambda() const {
  const double p1d = 1.0 - inv(p1);
  const double pd = 1.0 - inv(p);
  return 0.5 - 0.5 * (n * p1d - n * pd) - alpha;
}

void validate(const DualityExponents& e) {
  require(e.p >= 1.0 && e.p1 >= 1.0, "p, p1 >= 1");
  const double lam = e.lambda();
  require(lam > 0.0 && lam < 1.0, "0 < 1/2 - (n/2)(1/p1' - 1/p') - alpha < 1");
  require(e.q1 > 1.0 && e.q1 <= e.q && std::isfinite(e.q), "1 < q1 <= q < inf");
  require(e.alpha1 >= 0.0 && e.alpha1 < 1.0 - 1.0 / e.q1, "0 <= alpha1 < 1 - 1/q1");
  require(close(e.n * inv(e.p1) - e.n * inv(e.p) + 2.0 / e.q1 - 2.0 / e.q + 2.0 * (e.alpha1 - e.alpha), 1.0),
          "(n/p1 - n/p) + (2/q1 - 2/q) + 2(alpha1 - alpha) = 1");
}

void validate(const MomentExponents& e) {
  require(e.p >= 2.0 && std::isfinite(e.p), "2 <= p < inf");
  require(e.q > 2.0 && std::isfinite(e.q), "2 < q < inf");
  require(e.alpha >= 0.0 && 2.0 * e.alpha < 1.0 - 1.0 / e.p - 2.0 / e.q, "0 <= 2 alpha < 1 - 1/p - 2/q");
  check_noise(e.n, e.p, e.alpha, e.p2, e.alpha2);
}

void validate(const HlsExponents& e) {
  require(e.lambda > 0.0 && e.lambda < 1.0, "0 < lambda < 1");
  require(e.p > 1.0 && e.p <= e.q && std::isfinite(e.q), "1 < p <= q < inf");
  require(e.beta <= e.alpha, "beta <= alpha");
  require(e.alpha * e.p + 1.0 > 0.0 && e.alpha * e.p + 1.0 < e.p, "0 < alpha p + 1 < p");
  require(e.beta * e.q + 1.0 > 0.0 && e.beta * e.q + 1.0 < e.q, "0 < beta q + 1 < q");
  require(close(1.0 + 1.0 / e.q + e.beta, 1.0 / e.p + e.lambda + e.alpha),
          "1 + 1/q + beta = 1/p + lambda + alpha");
}

}  // namespace sns
