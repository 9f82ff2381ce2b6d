#ifndef SNS_LITTLEWOOD_PALEY_HPP
#define SNS_LITTLEWOOD_PALEY_HPP

#include <memory>
#include <span>
#include <vector>

#include "sns/grid.hpp"
#include "sns/spectral.hpp"

namespace sns {

// Radial profile equal to 1 on [0, 1] and 0 on [2, inf), smooth in between.
double psi_hat(double r);
// Annulus profile psi_hat(r) - psi_hat(2 r), supported in [1/2, 2].
double phi_hat(double r);

// Smoothness s, integrability p, summability q; p and q may be +inf.
struct BesovIndex {
  double s = 0.0;
  double p = 2.0;
  double q = 2.0;
  void validate() const;
};

// Time weight t^alpha inside an L^q norm; q may be +inf.
struct WeightedIndex {
  double q = 2.0;
  double alpha = 0.0;
  void validate() const;
};

// Band multipliers phi_hat(2^-j |xi|) on the doubled torus for
// j_min <= j <= j_max; their sum is exactly 1 on every nonzero frequency.
class DyadicFilterBank {
 public:
  explicit DyadicFilterBank(const GridSpec& spec);

  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }
  int band_count() const { return j_max_ - j_min_ + 1; }
  const Eigen::ArrayXd& weights(int j) const;
  const SpectralGrid& grid() const { return *grid_; }
  std::shared_ptr<const SpectralGrid> grid_ptr() const { return grid_; }
  // max |sum_j phi_j - 1| over nonzero grid frequencies.
  double partition_residual() const;

 private:
  std::shared_ptr<const SpectralGrid> grid_;
  int j_min_ = 0, j_max_ = 0;
  std::vector<Eigen::ArrayXd> weights_;
};

std::shared_ptr<const DyadicFilterBank> build_filter_bank(const GridSpec& spec);

ScalarField lp_project(const ScalarField& full, int j, const DyadicFilterBank& bank);
VectorField lp_project(const VectorField& full, int j, const DyadicFilterBank& bank);

// L^p norms of every band, j_min first; components combine pointwise in
// the Euclidean norm. p = 2 goes through Parseval without inverse FFTs.
std::vector<double> band_norms(std::span<const Spectrum> components, double p,
                               const DyadicFilterBank& bank);
double combine_bands(std::span<const double> bands, int j_min, const BesovIndex& idx);

double besov_norm(const ScalarField& full, const BesovIndex& idx, const DyadicFilterBank& bank);
double besov_norm(const VectorField& full, const BesovIndex& idx, const DyadicFilterBank& bank);
double besov_norm(std::span<const Spectrum> components, const BesovIndex& idx,
                  const DyadicFilterBank& bank);

struct HalfSpaceNorm {
  double value = 0.0;
  // False when s lies outside (-1/p, 1 - 1/p), where the zero extension no
  // longer gives an equivalent norm.
  bool reliable = true;
};

bool zero_extension_reliable(const BesovIndex& idx);
HalfSpaceNorm besov_norm_halfspace(const ScalarField& half, const BesovIndex& idx,
                                   const DyadicFilterBank& bank);
HalfSpaceNorm besov_norm_halfspace(const VectorField& half, const BesovIndex& idx,
                                   const DyadicFilterBank& bank);

// (int t^{alpha q} X(t)^q dt)^{1/q} by the trapezoid rule on t_k = k dt;
// the q = inf case is max t^alpha X(t).
double weighted_bochner_norm(std::span<const double> norms, double dt, const WeightedIndex& w);
// Same on an arbitrary increasing time grid.
double weighted_bochner_norm(std::span<const double> times, std::span<const double> norms,
                             const WeightedIndex& w);
// Norm over (0, t_k) for every k.
std::vector<double> running_bochner_norm(std::span<const double> norms, double dt,
                                         const WeightedIndex& w);

}  // namespace sns

#endif
