#ifndef SNS_STOCHASTIC_HPP
#define SNS_STOCHASTIC_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sns/exponents.hpp"
#include "sns/grid.hpp"

namespace sns {

// One scalar Brownian motion sampled on t_k = k dt.
struct WienerPath {
  std::uint64_t seed = 0;
  double dt = 0.0;
  std::vector<double> increments;  // B(t_{k+1}) - B(t_k)
  std::vector<double> values;      // B(t_k), values[0] = 0

  int steps() const { return static_cast<int>(increments.size()); }
};

WienerPath sample_path(std::uint64_t seed, int steps, double dt);
WienerPath sample_path(std::uint64_t seed, const GridSpec& spec);

// Paths derived from a master seed: path i uses seed(i) only.
class PathEnsemble {
 public:
  PathEnsemble(std::uint64_t master_seed, std::size_t count) : master_(master_seed), count_(count) {}
  std::uint64_t master_seed() const { return master_; }
  std::size_t size() const { return count_; }
  std::uint64_t seed(std::size_t index) const;
  WienerPath path(std::size_t index, int steps, double dt) const;

 private:
  std::uint64_t master_;
  std::size_t count_;
};

// Left-endpoint sums: out[K] = sum_{k<K} f(t_k) dB_k, out[0] = 0.
std::vector<double> ito_integrate(std::span<const double> integrand, const WienerPath& path);
VectorSeries ito_integrate(const VectorSeries& integrand, const WienerPath& path);

// u2(t_K) = sum_{k<K} S(t_K - t_k) g(t_k) dB_k, the Stokes semigroup applied
// to the noise. g has at least path.steps() samples; the constant-in-time
// overload reuses one transform of g.
VectorSeries stochastic_stokes(const VectorSeries& g, const WienerPath& path);
VectorSeries stochastic_stokes(const VectorField& g, const WienerPath& path);

// Compensated summation.
class NeumaierSum {
 public:
  void add(double x);
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0, carry_ = 0.0;
};

struct MeanEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t count = 0;
};
MeanEstimate estimate_mean(std::span<const double> samples);

struct Interval {
  double lo = 0.0, hi = 0.0;
};
// Percentile bootstrap interval for the sample mean.
Interval bootstrap_mean(std::span<const double> samples, int resamples, std::uint64_t seed,
                        double level = 0.95);
// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

// Runs body(i) for i < count on up to `threads` workers (0: hardware count).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, unsigned threads = 0);

struct BdgMomentReport {
  double lhs = 0.0;  // E int t^{alpha q} ||u2||_p^q dt
  double rhs = 0.0;  // int t^{alpha2 q} ||g||_{p2}^q dt
  double ratio = 0.0;
  Interval ratio_ci;
  std::size_t paths = 0;
  bool degenerate = false;
  std::vector<double> samples;  // per-path integrals, in path order
};

// g constant in time on the half slab; the time integral uses the
// trapezoid rule on every `stride`-th step.
BdgMomentReport verify_bdg_moment(const VectorField& g, const MomentExponents& e, const PathEnsemble& paths,
                                  int steps, double dt, int stride = 1, int resamples = 1000);
// Summary of the first `count` samples of a full report.
BdgMomentReport bdg_subset(const BdgMomentReport& full, std::size_t count, int resamples, std::uint64_t seed);

struct IsometryReport {
  double estimate = 0.0;  // E ||u2(T)||_2^2 over the ensemble
  double standard_error = 0.0;
  double oracle = 0.0;  // sum_k ||T_K g(., T, t_k)||_2^2 dt from the kernel
  double z = 0.0;       // |estimate - oracle| / standard_error
};

// g constant in time; paths run through the Stokes propagator, the oracle
// through apply_stokes_kernel.
IsometryReport verify_field_isometry(const VectorField& g, const PathEnsemble& paths, int steps, double dt);

struct BandBdgEntry {
  int j = 0;
  double lhs = 0.0;  // E int 2^{qj} ||Delta_j U g||_p^q dt
  double lhs_se = 0.0;
  double rhs = 0.0;  // int ||Delta_j g||_p^q dt
  double constant = 0.0;
  bool skipped = false;
};

struct BandBdgReport {
  std::vector<BandBdgEntry> bands;
  double spread = 0.0;  // max / min constant over non-skipped bands
};

// Band-wise moment bound for the stochastic heat convolution of a
// doubled-torus field g, constant in time; p = 2 only (Parseval).
BandBdgReport verify_band_bdg(const ScalarField& g, int j_lo, int j_hi, double q, const PathEnsemble& paths,
                              int steps, double dt);

}  // namespace sns

#endif
