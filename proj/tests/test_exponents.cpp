#include <string>

#include "doctest.h"
#include "sns/errors.hpp"
#include "sns/exponents.hpp"

using namespace sns;

namespace {

std::string message(auto&& f) {
  try {
    f();
  } catch (const ConfigurationError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("default tuples satisfy their relations") {
  const SolutionExponents sol;
  CHECK_NOTHROW(validate(sol));
  CHECK_NOTHROW(validate(sol, NoiseExponents{}));
  CHECK_NOTHROW(validate(sol, ForcingExponents{2.0, 4.0, 0.25}));
  CHECK_NOTHROW(validate(DualityExponents{}));
  CHECK_NOTHROW(validate(MomentExponents{2, 4.0, 8.0, 0.125, 2.0, 0.375}));
  CHECK_NOTHROW(validate(HlsExponents{}));
}

TEST_CASE("violated relations are rejected and named") {
  CHECK_FALSE(message([] { validate(SolutionExponents{2, 4.0, 8.0, 0.2}); }).empty());
  CHECK_FALSE(message([] { validate(SolutionExponents{2, 2.0, 8.0, 0.0}); }).empty());
  CHECK_FALSE(message([] { validate(SolutionExponents{}, NoiseExponents{2.0, 0.3}); }).empty());
  CHECK_FALSE(message([] { validate(SolutionExponents{}, NoiseExponents{8.0, 0.375}); }).empty());
  CHECK_FALSE(message([] { validate(SolutionExponents{}, ForcingExponents{2.0, 16.0, 0.25}); }).empty());
  CHECK_FALSE(message([] { validate(DualityExponents{2, 2.0, 4.0, 0.0, 2.0, 2.0, 0.0}); }).empty());
  CHECK_FALSE(message([] { validate(HlsExponents{0.5, 2.0, 4.0, 0.3, 0.0}); }).empty());
  CHECK_FALSE(message([] { validate(MomentExponents{2, 4.0, 2.0, 0.0, 2.0, 0.25}); }).empty());
}

TEST_CASE("solution relation 2 alpha = 1 - n/p - 2/q") {
  for (double p : {3.0, 4.0, 6.0, 10.0})
    for (double q : {4.0, 8.0, 16.0}) {
      const double alpha = 0.5 * (1.0 - 2.0 / p - 2.0 / q);
      if (alpha < 0) continue;
      CHECK_NOTHROW(validate(SolutionExponents{2, p, q, alpha}));
      CHECK_THROWS_AS(validate(SolutionExponents{2, p, q, alpha + 1e-9}), ConfigurationError);
    }
}

TEST_CASE("duality lambda") {
  // lambda = 1/2 - (n/2)(1/p1' - 1/p') - alpha; p1 = p gives 1/2 - alpha.
  CHECK(DualityExponents{}.lambda() == doctest::Approx(0.5));
}
