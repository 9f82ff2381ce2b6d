#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "sns/calculus.hpp"
#include "sns/helmholtz.hpp"
#include "sns/random_fields.hpp"
#include "sns/stokes.hpp"

using namespace sns;

namespace {

GridSpec grid(int m) {
  GridSpec s;
  s.m_tangential = s.m_normal = m;
  return s;
}

TensorField isotropic(const ScalarField& p) {
  TensorField F(p.spec(), Slab::Half, true);
  ScalarField q = p;
  q.row(0).setZero();
  F(0, 0) = q;
  F(1, 1) = q;
  F(0, 1) = ScalarField(p.spec(), Slab::Half);
  F(1, 0) = F(0, 1);
  return F;
}

double l2(const VectorField& v) { return lp_norm(v, 2.0); }

}  // namespace

TEST_CASE("admissibility is enforced") {
  const GridSpec s = grid(16);
  TensorField F(s, Slab::Half, true);
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) F(k, l) = ScalarField(s, Slab::Half);
  CHECK_NOTHROW(F.check_admissible());
  F(1, 1).values()[0] = 1.0;  // normal row on the wall
  CHECK_THROWS_AS(project_tensor(F), StructuralError);
  F(1, 1).values()[0] = 0.0;
  F(0, 1).values()[40] = 1.0;  // asymmetric storage
  CHECK_THROWS_AS(F.check_admissible(), StructuralError);
}

TEST_CASE("projection is linear and keeps the normal row as printed") {
  const GridSpec s = grid(32);
  std::mt19937_64 rng(11);
  const TensorField F = draw_tensor(rng, s).sample(s);
  const TensorField G = draw_tensor(rng, s).sample(s);
  TensorField H(s, Slab::Half, true);
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) H(k, l) = 2.0 * F(k, l) - 0.5 * G(k, l);
  const TensorField pf = project_tensor(F).fprime, pg = project_tensor(G).fprime, ph = project_tensor(H).fprime;
  double scale = 0.0, err = 0.0;
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      scale = std::max(scale, ph(k, l).values().abs().maxCoeff());
      err = std::max(err, (ph(k, l).values() - (2.0 * pf(k, l).values() - 0.5 * pg(k, l).values())).abs().maxCoeff());
    }
  CHECK(err <= 1e-10 * scale);
  // F'_{nm} = F_{nm} - delta_{nm} F_{nn}
  CHECK((pf(1, 0).values() == F(1, 0).values()).all());
  CHECK((pf(1, 1).values() == 0.0).all());
}

TEST_CASE("an isotropic pressure tensor maps to zero exactly") {
  const GridSpec s = grid(32);
  BumpSum b;
  b.bumps.push_back({{0.2, 0.5 * s.H, 0.0}, 0.25, 1.0});
  const VectorField Pu = helmholtz_apply(isotropic(sample(b, s)));
  CHECK(Pu[0].values().abs().maxCoeff() == 0.0);
  CHECK(Pu[1].values().abs().maxCoeff() == 0.0);
}

TEST_CASE("gradients are annihilated and the error falls under refinement") {
  // F = Hess(p): div F = grad(Laplacian p)
  double previous = 1.0;
  for (int m : {32, 64}) {
    const GridSpec s = grid(m);
    BumpSum b;
    b.bumps.push_back({{0.2, 0.5 * s.H, 0.0}, 0.25, 1.0});
    b.bumps.push_back({{-0.5, 0.45 * s.H, 0.0}, 0.2, -0.6});
    const ScalarField p = sample(b, s);
    TensorField F(s, Slab::Half, true);
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 2; ++l) {
        F(k, l) = partial(partial(p, k), l);
        F(k, l).row(0).setZero();
      }
    F(1, 0) = F(0, 1);
    const double ratio = l2(helmholtz_apply(F)) / l2(divergence(F));
    CHECK(ratio < 0.05);
    CHECK(ratio < previous);
    previous = ratio;
  }
}

TEST_CASE("projection output is divergence free in the interior") {
  const GridSpec s = grid(64);
  std::mt19937_64 rng(13);
  const TensorField F = draw_tensor(rng, s).sample(s);
  const VectorField w = helmholtz_apply(F);
  CHECK(relative_divergence(w) < 1e-2);
}
