#include "sns/hls.hpp"

#include <cmath>

#include "sns/errors.hpp"

namespace sns {

std::vector<double> fractional_integral(std::span<const double> f, double dt, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("lambda must lie in (0, 1)");
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  const std::size_t K = f.size();
  // Panel weights for distance m = k - i: (f_i, f_{i+1}) on [t_i, t_{i+1}].
  std::vector<double> wa(K + 1, 0.0), wb(K + 1, 0.0);
  for (std::size_t m = 1; m < K; ++m) {
    const double a = static_cast<double>(m - 1) * dt;
    const double b = static_cast<double>(m) * dt;
    const double M0 = (std::pow(b, 1.0 - lambda) - std::pow(a, 1.0 - lambda)) / (1.0 - lambda);
    const double M1 = (std::pow(b, 2.0 - lambda) - std::pow(a, 2.0 - lambda)) / (2.0 - lambda);
    wa[m] = (M1 - a * M0) / dt;
    wb[m] = (b * M0 - M1) / dt;
  }
  std::vector<double> out(K, 0.0);
  for (std::size_t k = 1; k < K; ++k) {
    double s = 0.0;
    for (std::size_t m = 1; m <= k; ++m) s += wa[m] * f[k - m] + wb[m] * f[k - m + 1];
    out[k] = s;
  }
  return out;
}

double weighted_time_norm(std::span<const double> f, double dt, double r, double a) {
  double acc = 0.0;
  const std::size_t K = f.size();
  for (std::size_t k = 0; k < K; ++k) {
    const double t = static_cast<double>(k) * dt;
    if (k == 0 && a < 0) continue;
    const double w = (k == 0 || k + 1 == K) ? 0.5 * dt : dt;
    acc += w * std::pow(t, a * r) * std::pow(std::abs(f[k]), r);
  }
  return std::pow(acc, 1.0 / r);
}

HlsResult hls_operator(std::span<const double> f, double dt, const HlsExponents& e) {
  validate(e);
  HlsResult res;
  res.values = fractional_integral(f, dt, e.lambda);
  res.input_norm = weighted_time_norm(f, dt, e.p, e.alpha);
  res.output_norm = weighted_time_norm(res.values, dt, e.q, e.beta);
  res.ratio = res.input_norm > 0 ? res.output_norm / res.input_norm : 0.0;
  return res;
}

}  // namespace sns
