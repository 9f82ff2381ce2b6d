#ifndef SNS_HLS_HPP
#define SNS_HLS_HPP

#include <span>
#include <vector>

#include "sns/exponents.hpp"

namespace sns {

// I_lambda f(t_k) = int_0^{t_k} (t_k - s)^{-lambda} f(s) ds on t_k = k dt,
// with f piecewise linear between samples and the kernel integrated exactly
// on every panel (including the singular one).
std::vector<double> fractional_integral(std::span<const double> f, double dt, double lambda);

struct HlsResult {
  std::vector<double> values;
  double input_norm = 0.0;
  double output_norm = 0.0;
  double ratio = 0.0;
};

// Weighted norm (int t^{a r} |f|^r dt)^{1/r} by the trapezoid rule; the
// t = 0 node is dropped when a < 0.
double weighted_time_norm(std::span<const double> f, double dt, double r, double a);

HlsResult hls_operator(std::span<const double> f, double dt, const HlsExponents& e);

}  // namespace sns

#endif
