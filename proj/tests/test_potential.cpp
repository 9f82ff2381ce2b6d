#include <cmath>

#include "doctest.h"
#include "sns/potential.hpp"
#include "sns/random_fields.hpp"
#include "sns/spectral.hpp"
#include "sns/suites.hpp"

using namespace sns;

namespace {

GridSpec grid(int m) {
  GridSpec s;
  s.m_tangential = s.m_normal = m;
  return s;
}

double masked_relative_l2(const ScalarField& a, const ScalarField& b, int margin) {
  double num = 0.0, den = 0.0;
  const int cols = a.row_length() - 2 * margin;
  for (int r = margin; r < a.rows() - margin; ++r) {
    num += (a.row(r) - b.row(r)).segment(margin, cols).square().sum();
    den += b.row(r).segment(margin, cols).square().sum();
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("multiplier is symmetric, bounded by one and has trace one") {
  const auto g = SpectralGrid::of(grid(32));
  const Eigen::ArrayXd m00 = hessian_multiplier(*g, 0, 0), m11 = hessian_multiplier(*g, 1, 1);
  CHECK((hessian_multiplier(*g, 0, 1) == hessian_multiplier(*g, 1, 0)).all());
  CHECK(hessian_l2_constant(*g) <= 1.0);
  const Eigen::ArrayXd trace = m00 + m11;
  const Eigen::ArrayXd& mod2 = g->modulus_squared();
  for (Eigen::Index k = 0; k < trace.size(); ++k) CHECK(trace[k] == doctest::Approx(mod2[k] > 0 ? 1.0 : 0.0));
}

TEST_CASE("single even mode: Hessian of the potential in closed form") {
  // f = cos(a x1) cos(b x_n), Delta u = f gives u = -f / (a^2 + b^2).
  const GridSpec s = grid(32);
  const double a = 3.0, b = 2.0, k2 = a * a + b * b;
  const auto f = ScalarField::sample(s, Slab::Half, [&](const Point& x) { return std::cos(a * x[0]) * std::cos(b * x[1]); });
  const auto d11 = newtonian_hessian(f, 0, 0, Extension::Even);
  const auto dnn = newtonian_hessian(f, 1, 1, Extension::Even);
  const auto d1n = newtonian_hessian(f, 0, 1, Extension::Even);
  const auto e1n = ScalarField::sample(s, Slab::Half, [&](const Point& x) {
    return -a * b * std::sin(a * x[0]) * std::sin(b * x[1]) / k2;
  });
  CHECK((d11.values() - a * a / k2 * f.values()).abs().maxCoeff() < 1e-12);
  CHECK((dnn.values() - b * b / k2 * f.values()).abs().maxCoeff() < 1e-12);
  CHECK((d1n.values() - e1n.values()).abs().maxCoeff() < 1e-12);
}

TEST_CASE("trace of the Hessian returns the mean-free density") {
  const GridSpec s = grid(32);
  BumpSum b;
  b.bumps.push_back({{0.3, 0.5 * s.H, 0.0}, 0.3, 1.0});
  const ScalarField f = sample(b, s);
  const ScalarField tr = newtonian_hessian(f, 0, 0, Extension::Zero) + newtonian_hessian(f, 1, 1, Extension::Zero);
  const double mean = zero_extend(f).values().mean();
  for (int r = 0; r < s.m_normal; ++r) CHECK((tr.row(r) - (f.row(r) - mean)).abs().maxCoeff() < 1e-12);
}

TEST_CASE("direct quadrature with periodic translates at 32^2") {
  const GridSpec s = grid(32);
  BumpSum pair;
  pair.bumps.push_back({{-0.4, 0.5 * s.H, 0.0}, 0.35, 1.0});
  pair.bumps.push_back({{0.6, 0.55 * s.H, 0.0}, 0.35, -1.0});
  const ScalarField f = sample(pair, s);
  for (bool reflected : {false, true})
    for (int i = 0; i < 2; ++i)
      for (int j = i; j < 2; ++j) {
        const ScalarField fast = newtonian_hessian(f, i, j, reflected ? Extension::Mirror : Extension::Zero);
        const ScalarField oracle = direct_newtonian_hessian(f, i, j, reflected, 3);
        CHECK(masked_relative_l2(fast, oracle, 4) < 0.02);
      }
}

TEST_CASE("trace estimate rejects smoothness outside (-1 + 1/p, 0)") {
  const GridSpec s = grid(32);
  const auto bank = build_filter_bank(s);
  BumpSum b;
  b.bumps.push_back({{0.0, 0.5 * s.H, 0.0}, 0.3, 1.0});
  const ScalarField f = sample(b, s);
  CHECK_THROWS(trace_estimate_check(f, BesovIndex{-0.6, 2.0, 2.0}, false, *bank));
  CHECK_THROWS(trace_estimate_check(f, BesovIndex{0.1, 2.0, 2.0}, false, *bank));
  const TraceEstimate e = trace_estimate_check(f, BesovIndex{-0.25, 2.0, 2.0}, false, *bank);
  CHECK(e.ratio > 0.0);
  CHECK(std::isfinite(e.ratio));
  CHECK(e.reliable);
}
