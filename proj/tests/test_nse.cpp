#include <cmath>
#include <random>

#include "doctest.h"
#include "sns/errors.hpp"
#include "sns/nse.hpp"
#include "sns/random_fields.hpp"
#include "sns/stokes.hpp"

using namespace sns;

namespace {

GridSpec grid(int m, double T = 0.02) {
  GridSpec s;
  s.m_tangential = s.m_normal = m;
  s.T = T;
  return s;
}

double max_abs(const VectorSeries& v) {
  double m = 0.0;
  for (const auto& f : v.samples)
    for (int i = 0; i < f.dim(); ++i) m = std::max(m, f[i].values().abs().maxCoeff());
  return m;
}

}  // namespace

TEST_CASE("cutoff values") {
  CHECK(cutoff_theta(0.0, 0.5) == 1.0);
  CHECK(cutoff_theta(0.5, 0.5) == 1.0);
  CHECK(cutoff_theta(0.75, 0.5) == 0.5);
  CHECK(cutoff_theta(1.0, 0.5) == 0.0);
  CHECK(cutoff_theta(7.0, 0.5) == 0.0);
  CHECK_THROWS_AS(cutoff_theta(-1.0, 0.5), DomainError);
  CHECK_THROWS_AS(cutoff_theta(1.0, 0.0), DomainError);
}

TEST_CASE("configuration") {
  SolveConfig c;
  const ForcingExponents f = c.forcing();
  CHECK(f.p1 == 2.0);
  CHECK(f.q1 == 4.0);
  CHECK(f.alpha1 == 0.25);
  CHECK_NOTHROW(c.validate());
  c.R = -1.0;
  CHECK_THROWS(c.validate());
}

TEST_CASE("quadratic tensor vanishes on the wall and scales with chi") {
  const GridSpec s = grid(16);
  std::mt19937_64 rng(1);
  const VectorField v = draw_solenoidal(rng, s).sample(s);
  const TensorField F = quadratic_tensor(v, 0.5);
  CHECK_NOTHROW(F.check_admissible());
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      CHECK((F(k, l).row(0) == 0.0).all());
      for (Eigen::Index i = s.tangential_count(); i < F(k, l).size(); i += 37)
        CHECK(F(k, l).values()[i] == doctest::Approx(0.5 * v[k].values()[i] * v[l].values()[i]));
    }
}

TEST_CASE("zero data: the fixed point is zero and tau lies beyond the horizon") {
  const GridSpec s = grid(16);
  SolveConfig c;
  c.R = 0.1;
  const VectorField zero(s, Slab::Half);
  const PicardResult r = picard_solve(zero, zero, sample_path(1, s), c);
  CHECK(r.converged);
  CHECK(r.iterations == 1);
  CHECK(r.tau_index == -1);
  CHECK(r.final_norm == 0.0);
  CHECK(max_abs(r.u) == 0.0);
  CHECK(r.chi.front() == 1.0);
}

TEST_CASE("without the quadratic term the solution map is the linear solution") {
  const GridSpec s = grid(64);
  std::mt19937_64 rng(2);
  const VectorField u0 = draw_solenoidal(rng, s).sample(s);
  const VectorSeries lin = linear_solution(u0, VectorField(s, Slab::Half), sample_path(3, s));
  const VectorSeries direct = stokes_from_initial(u0, s.steps(), s.dt);
  CHECK(max_abs(subtract(lin, direct)) <= 1e-12 * max_abs(direct));
  SolveConfig c;
  c.nonlinear = false;
  CHECK(max_abs(subtract(solution_map(lin, lin, c), lin)) == 0.0);
  CHECK(max_abs(nonlinear_term(lin, c)) == 0.0);
}

TEST_CASE("small data: Picard contracts and stays inside the ball") {
  const GridSpec s = grid(64);
  SolveConfig c;
  c.R = 0.05;
  c.delta = c.R * c.R;
  const SmallData d = draw_small_data(9, s, c);
  CHECK(initial_data_norm(d.u0(s), c.solution) == doctest::Approx(c.delta / 2).epsilon(1e-10));
  CHECK(noise_data_norm(d.g(s), c.solution, c.noise, s.T) == doctest::Approx(c.delta / 2).epsilon(1e-10));
  const PicardResult r = picard_solve(d.u0(s), d.g(s), sample_path(4, s), c);
  CHECK(r.converged);
  CHECK(r.tau_index == -1);
  CHECK(r.final_norm < c.R);
  for (std::size_t k = 2; k < r.differences.size(); ++k)
    if (r.differences[k - 1] > 0) CHECK(r.differences[k] < 0.9 * r.differences[k - 1]);
  // the returned u is a fixed point of the solution map
  const VectorSeries lin = linear_solution(d.u0(s), d.g(s), sample_path(4, s));
  CHECK(solution_norm(subtract(r.u, solution_map(r.u, lin, c)), c.solution) <=
        2.0 * c.picard_tol * solution_norm(r.u, c.solution));
}

TEST_CASE("large data: tau is the first crossing of the running norm") {
  const GridSpec s = grid(64);
  SolveConfig c;
  c.R = 1e-3;
  std::mt19937_64 rng(6);
  const VectorField u0 = draw_solenoidal(rng, s).sample(s);
  const VectorSeries lin = linear_solution(u0, VectorField(s, Slab::Half), sample_path(5, s));
  const PicardResult r = picard_solve(lin, c);
  REQUIRE(r.tau_index > 0);
  const auto run = running_norm(solution_map(r.u, lin, c), c.solution);
  CHECK(run[static_cast<std::size_t>(r.tau_index)] >= c.R);
  CHECK(run[static_cast<std::size_t>(r.tau_index) - 1] < c.R);
  for (std::size_t k = static_cast<std::size_t>(r.tau_index); k < r.u.size(); ++k)
    CHECK(r.u[k][0].values().abs().maxCoeff() == 0.0);
}

TEST_CASE("contraction ratio of nearby small pairs is below one") {
  const GridSpec s = grid(64);
  SolveConfig c;
  c.R = 0.05;
  std::mt19937_64 rng(8);
  VectorSeries a = stokes_from_initial(draw_solenoidal(rng, s).sample(s), s.steps(), s.dt);
  VectorSeries b = stokes_from_initial(draw_solenoidal(rng, s).sample(s), s.steps(), s.dt);
  const double na = solution_norm(a, c.solution), nb = solution_norm(b, c.solution);
  for (auto& f : a.samples) f *= 0.5 * c.R / na;
  for (auto& f : b.samples) f *= 0.5 * c.R / nb;
  const double kappa = contraction_ratio(a, b, c);
  CHECK(kappa >= 0.0);
  CHECK(kappa < 1.0);
}
