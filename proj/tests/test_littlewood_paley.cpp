#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "sns/littlewood_paley.hpp"
#include "sns/random_fields.hpp"

using namespace sns;

namespace {

GridSpec grid(int m) {
  GridSpec s;
  s.m_tangential = s.m_normal = m;
  return s;
}

}  // namespace

TEST_CASE("radial profiles") {
  CHECK(psi_hat(0.0) == 1.0);
  CHECK(psi_hat(1.0) == 1.0);
  CHECK(psi_hat(2.0) == 0.0);
  CHECK(psi_hat(5.0) == 0.0);
  CHECK(phi_hat(0.4) == 0.0);
  CHECK(phi_hat(2.1) == 0.0);
  CHECK(phi_hat(1.0) == doctest::Approx(1.0 - psi_hat(2.0)));
  for (double r = 0.0; r < 3.0; r += 0.01) {
    CHECK(psi_hat(r) >= 0.0);
    CHECK(psi_hat(r) <= 1.0);
    CHECK(psi_hat(r + 0.01) <= psi_hat(r));
  }
}

TEST_CASE("partition of unity on the grid") {
  for (int m : {32, 64, 128}) {
    const DyadicFilterBank bank(grid(m));
    CHECK(bank.partition_residual() < 1e-12);
    CHECK(bank.band_count() >= 4);
  }
}

TEST_CASE("band projections reconstruct a mean-free field") {
  const GridSpec s = grid(64);
  const auto bank = build_filter_bank(s);
  std::mt19937_64 rng(7);
  const ScalarField f = draw_band_modes(rng, s, bank->j_min() + 1, bank->j_max() - 2).sample(s);
  ScalarField sum(s, Slab::Full);
  for (int j = bank->j_min(); j <= bank->j_max(); ++j) sum += lp_project(f, j, *bank);
  const double mean = f.values().mean();
  CHECK((sum.values() - (f.values() - mean)).abs().maxCoeff() < 1e-10 * f.values().abs().maxCoeff());
}

TEST_CASE("single-mode Besov norm from the profile values") {
  const GridSpec s = grid(64);
  const auto bank = build_filter_bank(s);
  TorusModes one;
  TorusModes::Mode m;
  m.k = {6, 3, 0};
  m.a = 1.0;
  one.modes.push_back(m);
  const ScalarField f = one.sample(s);
  const double xi = std::hypot(6.0 / (2.0 * s.L), 3.0 / (2.0 * s.H));
  // ||cos||_2 over the doubled torus (2L x 2H) is sqrt(2L 2H / 2).
  const double l2 = std::sqrt(2.0 * s.L * s.H);
  for (double sm : {0.0, -0.5, 0.75}) {
    double expected = 0.0;
    for (int j = bank->j_min(); j <= bank->j_max(); ++j)
      expected += std::pow(std::exp2(sm * j) * phi_hat(std::exp2(-j) * xi) * l2, 2);
    expected = std::sqrt(expected);
    CHECK(besov_norm(f, BesovIndex{sm, 2.0, 2.0}, *bank) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("zero-extension reliability range") {
  CHECK(zero_extension_reliable(BesovIndex{-0.25, 2.0, 2.0}));
  CHECK_FALSE(zero_extension_reliable(BesovIndex{-0.25, 4.0, 8.0}));
  CHECK_FALSE(zero_extension_reliable(BesovIndex{-0.6, 2.0, 2.0}));
  CHECK(zero_extension_reliable(BesovIndex{0.4, 2.0, 2.0}));
  CHECK_FALSE(zero_extension_reliable(BesovIndex{0.6, 2.0, 2.0}));
}

TEST_CASE("weighted Bochner norms") {
  const double dt = 1e-3;
  std::vector<double> x(1001);
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = k * dt;
  // int_0^1 t * t dt = 1/3, trapezoid error dt^2 / 6
  CHECK(weighted_bochner_norm(x, dt, WeightedIndex{1.0, 1.0}) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  // q = inf: max t^alpha X
  CHECK(weighted_bochner_norm(x, dt, WeightedIndex{std::numeric_limits<double>::infinity(), 0.5}) ==
        doctest::Approx(1.0));
  std::vector<double> one(1001, 1.0);
  CHECK(weighted_bochner_norm(one, dt, WeightedIndex{2.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-14));
  const auto run = running_bochner_norm(x, dt, WeightedIndex{4.0, 0.125});
  CHECK(run.front() == 0.0);
  CHECK(run.back() == doctest::Approx(weighted_bochner_norm(x, dt, WeightedIndex{4.0, 0.125})).epsilon(1e-14));
  for (std::size_t k = 1; k < run.size(); ++k) CHECK(run[k] >= run[k - 1]);
  // arbitrary time grid agrees with the uniform one
  CHECK(weighted_bochner_norm(x, x, WeightedIndex{1.0, 1.0}) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("index validation") {
  CHECK_THROWS(BesovIndex{0.0, 0.5, 2.0}.validate());
  CHECK_THROWS(WeightedIndex{0.0, 0.0}.validate());
  CHECK_NOTHROW(BesovIndex{-0.25, 4.0, std::numeric_limits<double>::infinity()}.validate());
}
