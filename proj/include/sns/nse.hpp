#ifndef SNS_NSE_HPP
#define SNS_NSE_HPP

#include <cstdint>
#include <vector>

#include "sns/exponents.hpp"
#include "sns/grid.hpp"
#include "sns/random_fields.hpp"
#include "sns/stochastic.hpp"

namespace sns {

struct SolveConfig {
  SolutionExponents solution{};          // (n, p, q, alpha)
  NoiseExponents noise{};                // (p2, alpha2)
  double R = 1.0;                        // cutoff radius
  double delta = 1.0;                    // data smallness
  double epsilon = 0.1;                  // target failure probability
  int max_picard_iters = 50;
  double picard_tol = 1e-8;              // relative, in the solution norm
  bool nonlinear = true;                 // false drops the quadratic term

  // Forcing exponents of the quadratic term: (p/2, q/2, 2 alpha).
  ForcingExponents forcing() const;
  void validate() const;
};

// min(1, max(0, 2 - s / R)).
double cutoff_theta(double s, double R);

// ||v||_{L^q_alpha(0, t_k; L^p)} for every grid time.
std::vector<double> running_norm(const VectorSeries& v, const SolutionExponents& e);
// Same over the whole series.
double solution_norm(const VectorSeries& v, const SolutionExponents& e);
// theta of the running norm at every grid time.
std::vector<double> chi_of_path(const VectorSeries& v, const SolveConfig& cfg);

// chi v (x) v with the row x_n = 0 set to zero.
TensorField quadratic_tensor(const VectorField& v, double chi);

// V = -int S P div(chi_v v (x) v): the quadratic part of the solution map.
VectorSeries nonlinear_term(const VectorSeries& v, const SolveConfig& cfg);

// S(v) = linear + nonlinear_term(v), where linear is the Stokes solution
// with the initial value and the noise.
VectorSeries solution_map(const VectorSeries& v, const VectorSeries& linear, const SolveConfig& cfg);
VectorSeries linear_solution(const VectorField& u0, const VectorField& g, const WienerPath& path);

VectorSeries add(const VectorSeries& a, const VectorSeries& b);
VectorSeries subtract(const VectorSeries& a, const VectorSeries& b);

struct PicardResult {
  VectorSeries u;                  // zero from the stopping index on
  std::vector<double> differences; // ||u^{k+1} - u^k|| per iteration
  std::vector<double> chi;         // cutoff of the final iterate
  int iterations = 0;
  bool converged = false;
  int tau_index = -1;              // first k with running norm >= R; -1: beyond T
  double final_norm = 0.0;         // before truncation at tau
  bool chi_active = false;         // chi < 1 somewhere on the final iterate
};

PicardResult picard_solve(const VectorSeries& linear, const SolveConfig& cfg);
PicardResult picard_solve(const VectorField& u0, const VectorField& g, const WienerPath& path,
                          const SolveConfig& cfg);

// ||S(u) - S(v)|| / ||u - v|| for one pair; the linear parts cancel.
double contraction_ratio(const VectorSeries& u, const VectorSeries& v, const SolveConfig& cfg);

// Small random data: u0 and g are solenoidal bump fields scaled so that
// ||u0||_{B^{-2 alpha - 2/q}_{pq}} = delta / 2 and
// ||g||_{L^q_{alpha2}(0, T; L^{p2})} = delta / 2 on the grid they were drawn for.
struct SmallData {
  SolenoidalField initial, noise;
  double initial_scale = 0.0, noise_scale = 0.0;

  VectorField u0(const GridSpec& spec) const;
  VectorField g(const GridSpec& spec) const;
};

double initial_data_norm(const VectorField& u0, const SolutionExponents& e);
double noise_data_norm(const VectorField& g, const SolutionExponents& sol, const NoiseExponents& noise, double T);

SmallData draw_small_data(std::uint64_t seed, const GridSpec& spec, const SolveConfig& cfg);

struct ConstantReport {
  double initial = 0.0;  // ||S u0|| / ||u0||_B
  double noise = 0.0;    // (E ||u2||^q)^{1/q} / ||g||
  double forcing = 0.0;  // ||V(F)|| / ||F||
  double c1 = 0.0;       // max of the three
  double c2 = 0.0;       // max ||S(u) - S(v)|| / (R0 ||u - v||) over pairs in the R0 ball
};

ConstantReport measure_constants(const GridSpec& spec, const SolveConfig& cfg, std::uint64_t seed,
                                 int corpus = 3, int noise_paths = 100, int pairs = 3);

struct PathRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  int tau_index = -1;
  int iterations = 0;
  bool converged = false;
  double final_norm = 0.0;
  bool chi_active = false;
  double max_difference_ratio = 0.0;  // max d_{k+1}/d_k after the second iteration
};

struct Theorem1Report {
  std::vector<PathRecord> paths;
  std::size_t positive = 0;  // tau > 0
  std::size_t beyond = 0;    // tau > T
  Interval beyond_ci;
  bool all_converged = true;
};

// Data for path i comes from draw_small_data(data_seeds.seed(i)); the
// Brownian path from paths.seed(i).
Theorem1Report monte_carlo_theorem1(const GridSpec& spec, const SolveConfig& cfg, const PathEnsemble& paths,
                                    const PathEnsemble& data_seeds);

struct WeakFormReport {
  std::vector<double> residuals;  // per test function, max over time, normalized
  double max_residual = 0.0;
};

// Pairing with five divergence-free test fields vanishing near x_n = 0,
// two of them with the time factor exp(-t / T).
WeakFormReport weak_form_check(const VectorSeries& u, const std::vector<double>& chi, const VectorField& u0,
                               const VectorField& g, const WienerPath& path);

struct Theorem2Row {
  std::size_t index = 0;
  double besov_norm = 0.0;     // ||u||_{L^q(0, tau; B^{-2 alpha}_{pq})}
  double initial_ratio = 0.0;  // v-part over ||u0||_{B^{-2 alpha - 2/q}_{pq}}
  double quadratic_ratio = 0.0;  // V-part over ||u||^2_{L^q_alpha L^p}
  double noise_ratio = 0.0;    // u2-part over (int ||g||^q_{B^{-2 alpha - 1}_{pq}})^{1/q}
  double quadratic_norm = 0.0;
};

struct Theorem2Report {
  std::vector<Theorem2Row> rows;
  double initial_max = 0.0, quadratic_max = 0.0, noise_max = 0.0;
  bool all_finite = true;
  bool reliable = true;  // zero-extension norms inside their equivalence range
};

Theorem2Report theorem2_paths(const GridSpec& spec, const SolveConfig& cfg, const PathEnsemble& paths,
                              const std::vector<SmallData>& data, int stride = 10);

}  // namespace sns

#endif
