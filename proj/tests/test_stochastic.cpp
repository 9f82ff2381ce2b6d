#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "sns/errors.hpp"
#include "sns/littlewood_paley.hpp"
#include "sns/random_fields.hpp"
#include "sns/stochastic.hpp"

using namespace sns;

TEST_CASE("paths are reproducible and cumulative") {
  const WienerPath a = sample_path(42, 100, 1e-3), b = sample_path(42, 100, 1e-3);
  CHECK(a.increments == b.increments);
  CHECK(a.values.front() == 0.0);
  CHECK(a.values.size() == 101);
  double sum = 0.0;
  for (double d : a.increments) sum += d;
  CHECK(a.values.back() == doctest::Approx(sum).epsilon(1e-14));
  CHECK(sample_path(43, 100, 1e-3).increments != a.increments);
  CHECK_THROWS_AS(sample_path(1, -1, 1e-3), DomainError);
}

TEST_CASE("ensemble seeds depend only on master seed and index") {
  const PathEnsemble e(7, 100), f(7, 200);
  for (std::size_t i = 0; i < 100; ++i) CHECK(e.seed(i) == f.seed(i));
  CHECK(e.seed(0) != e.seed(1));
  CHECK(PathEnsemble(8, 10).seed(0) != e.seed(0));
  CHECK_THROWS(e.seed(100));
}

TEST_CASE("Ito sums") {
  const WienerPath p = sample_path(5, 50, 1e-2);
  const std::vector<double> one(50, 1.0);
  const auto I = ito_integrate(one, p);
  for (std::size_t k = 0; k < I.size(); ++k) CHECK(I[k] == doctest::Approx(p.values[k]).epsilon(1e-13));
  // int B dB = (B_T^2 - T) / 2 - (sum dB^2 - T) / 2 on left sums
  std::vector<double> B(p.values.begin(), p.values.end() - 1);
  double qv = 0.0;
  for (double d : p.increments) qv += d * d;
  CHECK(ito_integrate(B, p).back() == doctest::Approx(0.5 * (p.values.back() * p.values.back() - qv)).epsilon(1e-12));
}

TEST_CASE("scalar isometry E (int s dB)^2 = T^3 / 3") {
  const int steps = 100;
  const double dt = 1e-2, T = 1.0;
  const PathEnsemble ens(11, 4000);
  std::vector<double> sq;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    const WienerPath p = ens.path(i, steps, dt);
    double s = 0.0;
    for (int k = 0; k < steps; ++k) s += k * dt * p.increments[static_cast<std::size_t>(k)];
    sq.push_back(s * s);
  }
  const MeanEstimate m = estimate_mean(sq);
  // left sums: sum_k (k dt)^2 dt
  double exact = 0.0;
  for (int k = 0; k < steps; ++k) exact += std::pow(k * dt, 2) * dt;
  CHECK(std::abs(m.mean - exact) < 4.0 * m.standard_error);
  CHECK(exact == doctest::Approx(T * T * T / 3.0).epsilon(0.02));
}

TEST_CASE("statistics helpers") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  const MeanEstimate m = estimate_mean(x);
  CHECK(m.mean == 2.5);
  CHECK(m.standard_error == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
  // all successes: lower bound n / (n + z^2)
  const double z = 1.959963984540054;
  const Interval w = wilson_interval(10, 10);
  CHECK(w.hi == doctest::Approx(1.0));
  CHECK(w.lo == doctest::Approx(10.0 / (10.0 + z * z)));
  const Interval h = wilson_interval(5, 10);
  CHECK(0.5 - h.lo == doctest::Approx(h.hi - 0.5));
  NeumaierSum s;
  s.add(1e16);
  s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1.0);
  const Interval b = bootstrap_mean(x, 500, 3);
  CHECK(b.lo <= 2.5);
  CHECK(b.hi >= 2.5);
}

TEST_CASE("parallel_for visits every index once") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; }, 4);
  for (int h : hits) CHECK(h == 1);
}

TEST_CASE("band moment of a single mode in closed form, q = 2") {
  // c_K = sum_{k<K} e^{-lambda (K-k) dt} dB_k, so E c_K^2 = sum_{k<K} e^{-2 lambda (K-k) dt} dt.
  GridSpec s;
  s.m_tangential = s.m_normal = 32;
  const auto bank = build_filter_bank(s);
  TorusModes one;
  TorusModes::Mode m;
  m.k = {2, 1, 0};
  m.a = 1.0;
  one.modes.push_back(m);
  const double xi = std::hypot(2.0 / (2.0 * s.L), 1.0 / (2.0 * s.H));
  const double lambda = 4.0 * std::numbers::pi * std::numbers::pi * xi * xi;
  const int steps = 200;
  const double dt = 1e-3, T = steps * dt;
  const BandBdgReport rep = verify_band_bdg(one.sample(s), -1, 2, 2.0, PathEnsemble(3, 3000), steps, dt);
  int checked = 0;
  for (const auto& b : rep.bands) {
    if (b.skipped || phi_hat(std::exp2(-b.j) * xi) == 0.0) continue;
    double integral = 0.0;
    for (int K = 1; K <= steps; ++K) {
      double e = 0.0;
      for (int k = 0; k < K; ++k) e += std::exp(-2.0 * lambda * (K - k) * dt) * dt;
      integral += (K == steps ? 0.5 : 1.0) * dt * e;
    }
    const double expected = std::exp2(2.0 * b.j) * integral / T;
    CHECK(std::abs(b.constant - expected) < 4.0 * b.lhs_se / b.rhs);
    ++checked;
  }
  CHECK(checked >= 1);
  CHECK_THROWS(verify_band_bdg(one.sample(s), -1, 2, 1.5, PathEnsemble(3, 10), steps, dt));
}
