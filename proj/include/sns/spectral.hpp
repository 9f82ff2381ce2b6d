#ifndef SNS_SPECTRAL_HPP
#define SNS_SPECTRAL_HPP

#include <Eigen/Core>

#include <complex>
#include <memory>

#include "sns/grid.hpp"

namespace sns {

using Spectrum = Eigen::ArrayXcd;

// FFTW plans and frequency tables for one grid. Frequencies are in cycles
// per unit length (Fourier convention exp(-2 pi i x.xi)); the doubled torus
// has period 2L tangentially and 2H normally. Forward transforms are
// unnormalized, inverse transforms divide by the point count.
class SpectralGrid {
 public:
  static std::shared_ptr<const SpectralGrid> of(const GridSpec& spec);

  explicit SpectralGrid(const GridSpec& spec);
  ~SpectralGrid();
  SpectralGrid(const SpectralGrid&) = delete;
  SpectralGrid& operator=(const SpectralGrid&) = delete;

  const GridSpec& spec() const { return spec_; }
  Eigen::Index spectrum_size() const { return spectrum_size_; }
  Eigen::Index row_spectrum_size() const { return row_spectrum_size_; }
  double full_points() const { return static_cast<double>(spec_.size(Slab::Full)); }

  // Doubled torus.
  Spectrum forward(const ScalarField& full) const;
  ScalarField inverse(const Spectrum& spectrum) const;

  // Row-wise tangential transforms of a half- or full-slab field.
  Spectrum forward_rows(const ScalarField& f) const;
  ScalarField inverse_rows(const Spectrum& spectrum, Slab slab) const;

  // Tables over the doubled-torus spectrum. derivative_frequency is zero
  // on the Nyquist plane of that axis so odd multipliers stay Hermitian.
  const Eigen::ArrayXd& frequency(int axis) const { return freq_[static_cast<std::size_t>(axis)]; }
  const Eigen::ArrayXd& derivative_frequency(int axis) const {
    return dfreq_[static_cast<std::size_t>(axis)];
  }
  const Eigen::ArrayXd& modulus_squared() const { return mod2_; }
  const Eigen::ArrayXd& modulus() const { return mod_; }
  const Eigen::ArrayXd& tangential_modulus() const { return tmod_; }
  // Number of times each stored coefficient appears in the full spectrum.
  const Eigen::ArrayXd& hermitian_weight() const { return herm_; }
  // Normal index of each spectral entry (0 .. 2 m_n - 1).
  const Eigen::ArrayXi& normal_index() const { return normal_index_; }
  // Tangential position of each spectral entry inside a row spectrum.
  const Eigen::ArrayXi& row_index() const { return row_index_; }

  // Tables over one row spectrum (tangential frequencies only).
  const Eigen::ArrayXd& row_derivative_frequency(int axis) const {
    return row_dfreq_[static_cast<std::size_t>(axis)];
  }
  const Eigen::ArrayXd& row_frequency(int axis) const { return row_freq_[static_cast<std::size_t>(axis)]; }
  const Eigen::ArrayXd& row_modulus() const { return row_mod_; }

  double min_nonzero_modulus() const { return min_mod_; }
  double max_modulus() const { return max_mod_; }
  double torus_volume() const;

 private:
  struct Plans;
  GridSpec spec_;
  Eigen::Index spectrum_size_ = 0;
  Eigen::Index row_spectrum_size_ = 0;
  std::vector<Eigen::ArrayXd> freq_, dfreq_, row_freq_, row_dfreq_;
  Eigen::ArrayXd mod2_, mod_, tmod_, herm_, row_mod_;
  Eigen::ArrayXi normal_index_, row_index_;
  double min_mod_ = 0.0, max_mod_ = 0.0;
  std::unique_ptr<Plans> plans_;
};

// Spectrum of a half-slab field after the given extension.
Spectrum extended_spectrum(const ScalarField& half, Extension kind);

}  // namespace sns

#endif
