#ifndef SNS_STOKES_HPP
#define SNS_STOKES_HPP

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "sns/exponents.hpp"
#include "sns/grid.hpp"
#include "sns/littlewood_paley.hpp"
#include "sns/spectral.hpp"

namespace sns {

// Multiplier i xi_j / |xi'| applied slice by slice; zero at xi' = 0.
ScalarField riesz_tangential(const ScalarField& f, int axis);

// Stokes semigroup with no-slip wall, accumulated in heat-Fourier space.
// Data g enters through its odd extension (heat part) and, for tangential
// components, its mirror extension h_j. With Q = sum_j R'_j h_j and
// Pi(x', x_n) = int_0^{x_n} e^{-|D'|(x_n - z)} Q(z) dz the solution is
//   u_b = heat(odd g_b) - 2 d_b Pi,   u_n = heat(odd g_n) + 2 |D'| Pi,
// so u = 0 on x_n = 0 and div u = 0. Pi is evaluated as W - e^{-|D'| x_n} W|_0
// with W = (d_n + |D'|)^{-1} Q on the doubled torus.
class StokesPropagator {
 public:
  explicit StokesPropagator(const GridSpec& spec);

  // Extension spectra of one data field, reusable across adds.
  struct Prepared {
    std::vector<Spectrum> odd, mirror;
  };
  Prepared prepare(const VectorField& data) const;

  // state += weight * data, data on the half slab.
  void add(const VectorField& data, double weight);
  void add(const Prepared& data, double weight);
  // state = factor * data with one real factor per spectral entry.
  void assign(const Prepared& data, const Eigen::ArrayXd& factor);
  // state <- heat(tau) state.
  void advance(double tau);
  void reset();

  VectorField evaluate() const;

  struct Parts {
    VectorField heat;      // odd-extension heat term
    VectorField layer;     // gradient / |D'| correction without the Q term
    VectorField normal;    // 2 Q e_n
  };
  Parts evaluate_parts() const;

  const GridSpec& spec() const { return spec_; }

 private:
  Spectrum solve_w() const;
  GridSpec spec_;
  std::shared_ptr<const SpectralGrid> grid_;
  std::vector<Spectrum> odd_, mirror_;
  double cached_tau_ = -1.0;
  Eigen::ArrayXd cached_multiplier_;
};

// Relative spectral divergence sum |xi.u| / sum_a |xi_a u_a| of the zero extension.
double relative_divergence(const VectorField& half);

// v(t_k) for k = 0..steps with t_k = k dt.
VectorSeries stokes_from_initial(const VectorField& u0, int steps, double dt);

// V(t_k) = -sum_{i<k} dt S(t_k - t_i) P div F(t_i), F given per step.
VectorSeries stokes_from_forcing(const std::function<TensorField(int)>& forcing, int steps, double dt);
VectorSeries stokes_from_forcing(const TimeSeries<TensorField>& F);

// T_K g (x, t, s) from the kernel directly: heat difference plus the layer
// term evaluated per tangential frequency with a cumulative exponential
// trapezoid in x_n.
VectorField apply_stokes_kernel(const VectorField& g, double t, double s);

struct DualityReport {
  std::vector<double> ratios;
  double max_ratio = 0.0;
  std::size_t skipped = 0;
};

// Ratio ||D' U F'||_{L^q(0,T~; B^{-2 alpha}_{pq})} / ||F'||_{L^{q1}_{alpha1}(0,T~; L^{p1})}
// for F(t) = a(t) F0 with the projected tensors F0' given. The temporal
// profile a is sampled on t_k = k dt, k < profile.size(); T~ is the last
// sample time.
struct DualityCase {
  TensorField fprime;
  std::vector<double> profile;
  double dt = 1e-3;
};
DualityReport verify_duality_estimate(std::span<const DualityCase> corpus, const DualityExponents& e);

}  // namespace sns

#endif
