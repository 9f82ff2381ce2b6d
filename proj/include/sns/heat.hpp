#ifndef SNS_HEAT_HPP
#define SNS_HEAT_HPP

#include <span>
#include <vector>

#include "sns/grid.hpp"
#include "sns/littlewood_paley.hpp"
#include "sns/spectral.hpp"

namespace sns {

// exp(-4 pi^2 t |xi|^2): the kernel (4 pi t)^{-n/2} exp(-|x|^2 / 4t).
Eigen::ArrayXd heat_multiplier(const SpectralGrid& grid, double t);

// Spectral entries sharing one value of |xi|^2; heat factors only depend on
// the group, so time recursions can run over groups instead of modes.
struct ModulusGroups {
  Eigen::ArrayXi group;   // per spectral entry
  Eigen::ArrayXd lambda;  // 4 pi^2 |xi|^2 per group, increasing
  Eigen::ArrayXd expand(const Eigen::ArrayXd& per_group) const;
};
ModulusGroups group_by_modulus(const SpectralGrid& grid);

// Gamma_t * f on the doubled torus. Half-slab input is zero-extended first;
// the reflected kernel Gamma(x - y*, t) acts on the normal flip of f.
ScalarField heat_apply(const ScalarField& f, double t, bool reflected = false);
VectorField heat_apply(const VectorField& f, double t, bool reflected = false);

struct BandTimePoint {
  int j = 0;
  double t = 0.0;
};

struct BandDecayEntry {
  int j = 0;
  double t = 0.0;
  double ratio = 0.0;
  bool skipped = false;  // empty band
};

struct BandDecayReport {
  std::vector<BandDecayEntry> entries;
  double C = 0.0;  // fitted prefactor
  double c = 0.0;  // fitted rate in r <= C exp(-c t 4^j)
  bool bound_holds = false;
};

BandDecayReport verify_band_decay(const ScalarField& full, std::span<const BandTimePoint> points, double p,
                                  const DyadicFilterBank& bank);

struct SmoothingConfig {
  bool weighted = false;  // false: Besov-valued estimate, true: weighted L^p
  double beta = 0.0;
  double p = 2.0;
  double q = 2.0;
  double alpha = 0.0;
  int time_samples = 400;
  double tail_tolerance = 1e-8;
};

struct SmoothingReport {
  std::vector<double> ratios;  // one per corpus member, NaN when skipped
  std::size_t skipped = 0;
  double max_ratio = 0.0;
  double horizon = 0.0;
  double max_relative_tail = 0.0;  // certified bound on the truncated tail
};

SmoothingReport verify_smoothing(std::span<const ScalarField> corpus, const SmoothingConfig& cfg,
                                 const DyadicFilterBank& bank);

}  // namespace sns

#endif
