#include <cmath>
#include <random>

#include "doctest.h"
#include "sns/errors.hpp"
#include "sns/random_fields.hpp"
#include "sns/stokes.hpp"

using namespace sns;

namespace {

GridSpec grid(int m) {
  GridSpec s;
  s.m_tangential = s.m_normal = m;
  return s;
}

double relative(const VectorField& a, const VectorField& b) {
  double num = 0.0, den = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    num += (a[i].values() - b[i].values()).square().sum();
    den += b[i].values().square().sum();
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("tangential Riesz transform of a cosine") {
  // i xi / |xi| on cos(a x) is d/dx cos(a x) / a = -sin(a x)
  const GridSpec s = grid(32);
  const auto f = ScalarField::sample(s, Slab::Half, [](const Point& x) { return std::cos(3.0 * x[0]) * x[1]; });
  const auto e = ScalarField::sample(s, Slab::Half, [](const Point& x) { return -std::sin(3.0 * x[0]) * x[1]; });
  CHECK((riesz_tangential(f, 0).values() - e.values()).abs().maxCoeff() < 1e-12);
}

TEST_CASE("semigroup from solenoidal data") {
  const GridSpec s = grid(64);
  std::mt19937_64 rng(17);
  const VectorField u0 = draw_solenoidal(rng, s).sample(s);
  const VectorSeries v = stokes_from_initial(u0, 20, 1e-3);
  CHECK(v.size() == 21);
  // the data is ~1e-9 at the wall, which the extensions see
  CHECK(relative(v[0], u0) < 1e-8);
  double sup = 0.0, wall = 0.0;
  for (const auto& f : v.samples)
    for (int i = 0; i < 2; ++i) {
      sup = std::max(sup, f[i].values().abs().maxCoeff());
      wall = std::max(wall, f[i].row(0).abs().maxCoeff());
    }
  CHECK(wall <= 1e-3 * sup);
  CHECK(relative_divergence(v[20]) < 1e-2);
  // zero in, zero out
  const VectorSeries z = stokes_from_initial(VectorField(s, Slab::Half), 5, 1e-3);
  for (const auto& f : z.samples) CHECK(f[0].values().abs().maxCoeff() == 0.0);
}

TEST_CASE("propagator agrees with the direct kernel") {
  const GridSpec s = grid(64);
  std::mt19937_64 rng(19);
  const VectorField u0 = draw_solenoidal(rng, s).sample(s);
  const VectorSeries v = stokes_from_initial(u0, 50, 1e-3);
  CHECK(relative(v[50], apply_stokes_kernel(u0, 0.05, 0.0)) < 0.02);
}

TEST_CASE("forcing with zero tensor gives zero") {
  const GridSpec s = grid(16);
  TensorField F(s, Slab::Half, true);
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) F(k, l) = ScalarField(s, Slab::Half);
  const VectorSeries V = stokes_from_forcing([&](int) { return F; }, 4, 1e-3);
  CHECK(V.size() == 5);
  for (const auto& f : V.samples) CHECK(f[1].values().abs().maxCoeff() == 0.0);
}

TEST_CASE("duality estimate validates its tuple") {
  const GridSpec s = grid(16);
  std::mt19937_64 rng(23);
  std::vector<DualityCase> corpus{{draw_tensor(rng, s).sample(s), std::vector<double>(11, 1.0), 1e-3}};
  CHECK_THROWS_AS(verify_duality_estimate(corpus, DualityExponents{2, 2.0, 4.0, 0.0, 2.0, 2.0, 0.0}),
                  ConfigurationError);
}
