#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "sns/heat.hpp"
#include "sns/littlewood_paley.hpp"
#include "sns/random_fields.hpp"
#include "sns/spectral.hpp"

using namespace sns;

namespace {

GridSpec grid(int m) {
  GridSpec s;
  s.m_tangential = s.m_normal = m;
  return s;
}

}  // namespace

TEST_CASE("multiplier at t = 0 is the identity") {
  const auto g = SpectralGrid::of(grid(16));
  CHECK((heat_multiplier(*g, 0.0) == 1.0).all());
  CHECK_THROWS(heat_apply(ScalarField(grid(16), Slab::Full), -1.0));
}

TEST_CASE("Gaussian evolves in closed form") {
  // f = exp(-pi |x|^2 / a) -> (a / (a + 4 pi t))^{n/2} exp(-pi |x|^2 / (a + 4 pi t))
  const GridSpec s = grid(128);
  const double a = 0.2, t = 0.01, b = a + 4.0 * std::numbers::pi * t;
  const auto f = ScalarField::sample(s, Slab::Full, [&](const Point& x) {
    return std::exp(-std::numbers::pi * (x[0] * x[0] + x[1] * x[1]) / a);
  });
  const auto expected = ScalarField::sample(s, Slab::Full, [&](const Point& x) {
    return a / b * std::exp(-std::numbers::pi * (x[0] * x[0] + x[1] * x[1]) / b);
  });
  const ScalarField u = heat_apply(f, t);
  const double err = std::sqrt((u.values() - expected.values()).square().sum() / expected.values().square().sum());
  CHECK(err < 1e-6);
}

TEST_CASE("semigroup property") {
  const GridSpec s = grid(32);
  std::mt19937_64 rng(3);
  const ScalarField f = draw_band_modes(rng, s, -1, 2).sample(s);
  const ScalarField a = heat_apply(heat_apply(f, 0.01), 0.02);
  const ScalarField b = heat_apply(f, 0.03);
  CHECK((a.values() - b.values()).abs().maxCoeff() < 1e-13);
}

TEST_CASE("band decay: single mode is exact and the envelope bound holds") {
  const GridSpec s = grid(64);
  const auto bank = build_filter_bank(s);
  TorusModes one;
  TorusModes::Mode m;
  m.k = {4, 2, 0};
  m.a = 1.0;
  one.modes.push_back(m);
  const double xi2 = std::pow(4.0 / (2.0 * s.L), 2) + std::pow(2.0 / (2.0 * s.H), 2);
  std::vector<BandTimePoint> pts;
  for (int j = bank->j_min(); j <= bank->j_max(); ++j)
    for (double t : {0.0, 0.02, 0.1}) pts.push_back({j, t});
  const BandDecayReport rep = verify_band_decay(one.sample(s), pts, 2.0, *bank);
  int used = 0;
  for (const auto& e : rep.entries) {
    if (e.skipped) continue;
    ++used;
    CHECK(e.ratio == doctest::Approx(std::exp(-4.0 * std::numbers::pi * std::numbers::pi * xi2 * e.t)).epsilon(1e-10));
  }
  CHECK(used > 0);
  CHECK(rep.bound_holds);
  CHECK(rep.C == doctest::Approx(1.0));

  std::mt19937_64 rng(5);
  const ScalarField f = draw_band_modes(rng, s, -2, 2).sample(s);
  std::vector<BandTimePoint> grid_pts;
  for (int j = -2; j <= 2; ++j)
    for (double x : {0.0, 0.1, 0.5, 1.0}) grid_pts.push_back({j, x * std::ldexp(1.0, -2 * j)});
  const BandDecayReport r2 = verify_band_decay(f, grid_pts, 2.0, *bank);
  CHECK(r2.bound_holds);
  CHECK(r2.c > 0.0);
  CHECK(r2.c <= 16.0 * std::numbers::pi * std::numbers::pi);
}

TEST_CASE("smoothing ratios are finite with a certified tail") {
  const GridSpec s = grid(32);
  const auto bank = build_filter_bank(s);
  std::mt19937_64 rng(9);
  std::vector<ScalarField> corpus;
  for (int c = 0; c < 3; ++c) corpus.push_back(draw_band_modes(rng, s, -2, 2, 3).sample(s));
  SmoothingConfig cfg;
  cfg.q = 4.0;
  cfg.time_samples = 200;
  const SmoothingReport rep = verify_smoothing(corpus, cfg, *bank);
  CHECK(rep.ratios.size() == 3);
  CHECK(std::isfinite(rep.max_ratio));
  CHECK(rep.max_ratio > 0.0);
  CHECK(rep.max_relative_tail < 1e-8);
}
