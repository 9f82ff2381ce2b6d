#ifndef SNS_RANDOM_FIELDS_HPP
#define SNS_RANDOM_FIELDS_HPP

#include <random>
#include <vector>

#include "sns/grid.hpp"

namespace sns {

// Analytic random data: parameters are drawn once and then sampled on any
// grid, so refinement studies compare the same function.

struct GaussianBump {
  Point centre{};
  double sigma = 0.1;
  double amplitude = 1.0;
};

struct BumpOptions {
  int count = 6;
  double sigma_fraction = 1.0 / 16.0;  // of H
  double normal_lo = 0.4, normal_hi = 0.6;  // centre range as fractions of H
  double tangential_fraction = 0.5;  // centres in [-f L, f L]
};

struct BumpSum {
  int n = 2;
  std::vector<GaussianBump> bumps;

  double value(const Point& x) const;
  Point gradient(const Point& x) const;
};

BumpSum draw_bumps(std::mt19937_64& rng, const GridSpec& domain, const BumpOptions& opts = {});

// Solenoidal field: the perpendicular gradient of the potential for n = 2,
// grad(potential) x axis for n = 3 with a random tangential axis.
struct SolenoidalField {
  BumpSum potential;
  Point axis{1.0, 0.0, 0.0};

  VectorField sample(const GridSpec& spec) const;
};

SolenoidalField draw_solenoidal(std::mt19937_64& rng, const GridSpec& domain, const BumpOptions& opts = {});

ScalarField sample(const BumpSum& f, const GridSpec& spec, Slab slab = Slab::Half);

// Symmetric tensor with independent bump entries; every entry is set to
// zero on the row x_n = 0.
struct TensorBumps {
  int n = 2;
  std::vector<BumpSum> entries;  // upper triangle, row-major

  TensorField sample(const GridSpec& spec) const;
};

TensorBumps draw_tensor(std::mt19937_64& rng, const GridSpec& domain, const BumpOptions& opts = {});

// Real trigonometric sum on the doubled torus with a few modes per dyadic
// band j in [j_lo, j_hi] (|xi| in [2^j, 2^{j+1}) cycles per unit length).
struct TorusModes {
  struct Mode {
    std::array<int, 3> k{};  // integer wave numbers, normal last
    double a = 0.0, b = 0.0;  // cos and sin coefficients
  };
  int n = 2;
  std::vector<Mode> modes;

  ScalarField sample(const GridSpec& spec) const;
};

TorusModes draw_band_modes(std::mt19937_64& rng, const GridSpec& domain, int j_lo, int j_hi,
                           int modes_per_band = 4);

}  // namespace sns

#endif
