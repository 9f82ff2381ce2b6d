#include <cmath>
#include <vector>

#include "doctest.h"
#include "sns/errors.hpp"
#include "sns/hls.hpp"

using namespace sns;

TEST_CASE("constant input: t^(1-lambda)/(1-lambda)") {
  const double dt = 1e-3, lambda = 0.5;
  const std::vector<double> f(501, 1.0);
  const auto I = fractional_integral(f, dt, lambda);
  CHECK(I[0] == 0.0);
  for (std::size_t k = 1; k < I.size(); ++k) {
    const double t = k * dt;
    CHECK(I[k] == doctest::Approx(std::pow(t, 1 - lambda) / (1 - lambda)).epsilon(1e-12));
  }
}

TEST_CASE("linear input is integrated exactly") {
  // int_0^t (t - s)^-lambda s ds = t^(2 - lambda) / ((1 - lambda)(2 - lambda))
  const double dt = 1e-2, lambda = 0.3;
  std::vector<double> f(101);
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = k * dt;
  const auto I = fractional_integral(f, dt, lambda);
  for (std::size_t k = 1; k < I.size(); ++k) {
    const double t = k * dt;
    CHECK(I[k] == doctest::Approx(std::pow(t, 2 - lambda) / ((1 - lambda) * (2 - lambda))).epsilon(1e-11));
  }
}

TEST_CASE("power input against the Beta function") {
  const double dt = 1e-4, lambda = 0.5, a = 0.3;
  std::vector<double> f(10001);
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = std::pow(k * dt, a);
  const auto I = fractional_integral(f, dt, lambda);
  const double B = std::beta(a + 1, 1 - lambda);
  for (std::size_t k = 1000; k < I.size(); k += 500) {
    const double t = k * dt;
    CHECK(I[k] == doctest::Approx(B * std::pow(t, a + 1 - lambda)).epsilon(1e-4));
  }
}

TEST_CASE("weighted time norm") {
  const std::vector<double> one(1001, 1.0);
  CHECK(weighted_time_norm(one, 1e-3, 2.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  // int_0^1 t^2 dt = 1/3 for a = 1, r = 2
  CHECK(weighted_time_norm(one, 1e-3, 2.0, 1.0) == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-6));
}

TEST_CASE("operator ratio and validation") {
  std::vector<double> f(1001, 0.0);
  for (std::size_t k = 200; k < 400; ++k) f[k] = 1.0;
  const HlsResult r = hls_operator(f, 1e-3, HlsExponents{0.5, 2.0, 4.0, 0.25, 0.0});
  CHECK(r.ratio > 0.0);
  CHECK(r.ratio == doctest::Approx(r.output_norm / r.input_norm));
  CHECK_THROWS_AS(hls_operator(f, 1e-3, HlsExponents{0.5, 2.0, 4.0, 0.3, 0.0}), ConfigurationError);
  CHECK_THROWS(fractional_integral(f, 1e-3, 1.0));
}
