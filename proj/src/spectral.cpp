#include "sns/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <tuple>

namespace sns {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct Scratch {
  double* real = nullptr;
  fftw_complex* cplx = nullptr;
  std::size_t real_size = 0, cplx_size = 0;
  ~Scratch() {
    if (real) fftw_free(real);
    if (cplx) fftw_free(cplx);
  }
  double* reals(std::size_t n) {
    if (n > real_size) {
      if (real) fftw_free(real);
      real = fftw_alloc_real(n);
      real_size = n;
    }
    return real;
  }
  fftw_complex* complexes(std::size_t n) {
    if (n > cplx_size) {
      if (cplx) fftw_free(cplx);
      cplx = fftw_alloc_complex(n);
      cplx_size = n;
    }
    return cplx;
  }
};

Scratch& scratch() {
  thread_local Scratch s;
  return s;
}

int signed_index(int a, int count) { return a <= count / 2 ? a : a - count; }

}  // namespace

struct SpectralGrid::Plans {
  fftw_plan full_r2c = nullptr, full_c2r = nullptr;
  fftw_plan half_rows_r2c = nullptr, half_rows_c2r = nullptr;
  fftw_plan full_rows_r2c = nullptr, full_rows_c2r = nullptr;

  ~Plans() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    for (fftw_plan p : {full_r2c, full_c2r, half_rows_r2c, half_rows_c2r, full_rows_r2c, full_rows_c2r})
      if (p) fftw_destroy_plan(p);
  }
};

std::shared_ptr<const SpectralGrid> SpectralGrid::of(const GridSpec& spec) {
  using Key = std::tuple<int, double, double, int, int, double, double>;
  static std::mutex m;
  static std::map<Key, std::shared_ptr<const SpectralGrid>> cache;
  const Key key{spec.n, spec.L, spec.H, spec.m_tangential, spec.m_normal, spec.dt, spec.T};
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto g = std::make_shared<const SpectralGrid>(spec);
  cache.emplace(key, g);
  return g;
}

SpectralGrid::SpectralGrid(const GridSpec& spec) : spec_(spec), plans_(std::make_unique<Plans>()) {
  spec_.validate();
  const int n = spec_.n;
  const int m = spec_.m_tangential;
  const int Nn = 2 * spec_.m_normal;
  const int half_m = m / 2 + 1;
  row_spectrum_size_ = n == 2 ? half_m : static_cast<Eigen::Index>(m) * half_m;
  spectrum_size_ = static_cast<Eigen::Index>(Nn) * row_spectrum_size_;

  freq_.assign(static_cast<std::size_t>(n), Eigen::ArrayXd(spectrum_size_));
  dfreq_ = freq_;
  row_freq_.assign(static_cast<std::size_t>(n - 1), Eigen::ArrayXd(row_spectrum_size_));
  row_dfreq_ = row_freq_;
  herm_.resize(spectrum_size_);
  normal_index_.resize(spectrum_size_);
  row_index_.resize(spectrum_size_);
  Eigen::ArrayXd row_herm(row_spectrum_size_);

  for (Eigen::Index r = 0; r < row_spectrum_size_; ++r) {
    const int b = static_cast<int>(r % half_m);
    const double xb = b / (2.0 * spec_.L);
    const double db = (b == m / 2) ? 0.0 : xb;
    row_herm[r] = (b == 0 || b == m / 2) ? 1.0 : 2.0;
    if (n == 2) {
      row_freq_[0][r] = xb;
      row_dfreq_[0][r] = db;
    } else {
      const int c = static_cast<int>(r / half_m);
      const double xc = signed_index(c, m) / (2.0 * spec_.L);
      row_freq_[0][r] = xc;
      row_dfreq_[0][r] = (c == m / 2) ? 0.0 : xc;
      row_freq_[1][r] = xb;
      row_dfreq_[1][r] = db;
    }
  }
  row_mod_ = Eigen::ArrayXd::Zero(row_spectrum_size_);
  for (int ax = 0; ax < n - 1; ++ax) row_mod_ += row_freq_[static_cast<std::size_t>(ax)].square();
  row_mod_ = row_mod_.sqrt();

  for (int a = 0; a < Nn; ++a) {
    const double xn = signed_index(a, Nn) / (2.0 * spec_.H);
    const double dn = (a == Nn / 2) ? 0.0 : xn;
    for (Eigen::Index r = 0; r < row_spectrum_size_; ++r) {
      const Eigen::Index i = a * row_spectrum_size_ + r;
      for (int ax = 0; ax < n - 1; ++ax) {
        freq_[static_cast<std::size_t>(ax)][i] = row_freq_[static_cast<std::size_t>(ax)][r];
        dfreq_[static_cast<std::size_t>(ax)][i] = row_dfreq_[static_cast<std::size_t>(ax)][r];
      }
      freq_[static_cast<std::size_t>(n - 1)][i] = xn;
      dfreq_[static_cast<std::size_t>(n - 1)][i] = dn;
      herm_[i] = row_herm[r];
      normal_index_[i] = a;
      row_index_[i] = static_cast<int>(r);
    }
  }
  mod2_ = Eigen::ArrayXd::Zero(spectrum_size_);
  for (int ax = 0; ax < n; ++ax) mod2_ += freq_[static_cast<std::size_t>(ax)].square();
  mod_ = mod2_.sqrt();
  tmod_ = Eigen::ArrayXd::Zero(spectrum_size_);
  for (int ax = 0; ax < n - 1; ++ax) tmod_ += freq_[static_cast<std::size_t>(ax)].square();
  tmod_ = tmod_.sqrt();
  min_mod_ = std::min(1.0 / (2.0 * spec_.L), 1.0 / (2.0 * spec_.H));
  max_mod_ = mod_.maxCoeff();

  const int tc = spec_.tangential_count();
  const std::size_t full_real = spec_.size(Slab::Full);
  double* rbuf = fftw_alloc_real(full_real);
  fftw_complex* cbuf = fftw_alloc_complex(static_cast<std::size_t>(spectrum_size_));
  std::lock_guard<std::mutex> lock(planner_mutex());
  const unsigned flags = FFTW_ESTIMATE;
  if (n == 2) {
    plans_->full_r2c = fftw_plan_dft_r2c_2d(Nn, m, rbuf, cbuf, flags);
    plans_->full_c2r = fftw_plan_dft_c2r_2d(Nn, m, cbuf, rbuf, flags);
  } else {
    plans_->full_r2c = fftw_plan_dft_r2c_3d(Nn, m, m, rbuf, cbuf, flags);
    plans_->full_c2r = fftw_plan_dft_c2r_3d(Nn, m, m, cbuf, rbuf, flags);
  }
  int dims[2] = {m, m};
  const int rank = n - 1;
  const int rsz = static_cast<int>(row_spectrum_size_);
  auto many = [&](int rows, bool forward) {
    if (forward)
      return fftw_plan_many_dft_r2c(rank, dims, rows, rbuf, nullptr, 1, tc, cbuf, nullptr, 1, rsz, flags);
    return fftw_plan_many_dft_c2r(rank, dims, rows, cbuf, nullptr, 1, rsz, rbuf, nullptr, 1, tc, flags);
  };
  plans_->half_rows_r2c = many(spec_.m_normal + 1, true);
  plans_->half_rows_c2r = many(spec_.m_normal + 1, false);
  plans_->full_rows_r2c = many(Nn, true);
  plans_->full_rows_c2r = many(Nn, false);
  fftw_free(rbuf);
  fftw_free(cbuf);
}

SpectralGrid::~SpectralGrid() = default;

double SpectralGrid::torus_volume() const {
  return std::pow(2.0 * spec_.L, spec_.n - 1) * 2.0 * spec_.H;
}

Spectrum SpectralGrid::forward(const ScalarField& full) const {
  if (full.slab() != Slab::Full || !full.spec().same_space(spec_))
    throw StructuralError("forward transform expects a full-slab field on this grid");
  Scratch& s = scratch();
  const std::size_t N = spec_.size(Slab::Full);
  double* in = s.reals(N);
  fftw_complex* out = s.complexes(static_cast<std::size_t>(spectrum_size_));
  std::memcpy(in, full.data(), N * sizeof(double));
  fftw_execute_dft_r2c(plans_->full_r2c, in, out);
  Spectrum result(spectrum_size_);
  std::memcpy(static_cast<void*>(result.data()), out, static_cast<std::size_t>(spectrum_size_) * sizeof(fftw_complex));
  return result;
}

ScalarField SpectralGrid::inverse(const Spectrum& spectrum) const {
  if (spectrum.size() != spectrum_size_) throw StructuralError("spectrum size mismatch");
  Scratch& s = scratch();
  const std::size_t N = spec_.size(Slab::Full);
  double* out = s.reals(N);
  fftw_complex* in = s.complexes(static_cast<std::size_t>(spectrum_size_));
  std::memcpy(in, spectrum.data(), static_cast<std::size_t>(spectrum_size_) * sizeof(fftw_complex));
  fftw_execute_dft_c2r(plans_->full_c2r, in, out);
  ScalarField f(spec_, Slab::Full);
  Eigen::Map<const Eigen::ArrayXd> raw(out, static_cast<Eigen::Index>(N));
  f.values() = raw / static_cast<double>(N);
  return f;
}

Spectrum SpectralGrid::forward_rows(const ScalarField& f) const {
  if (!f.spec().same_space(spec_)) throw StructuralError("field is not on this grid");
  Scratch& s = scratch();
  const std::size_t N = spec_.size(f.slab());
  const Eigen::Index out_size = f.rows() * row_spectrum_size_;
  double* in = s.reals(N);
  fftw_complex* out = s.complexes(static_cast<std::size_t>(out_size));
  std::memcpy(in, f.data(), N * sizeof(double));
  fftw_execute_dft_r2c(f.slab() == Slab::Half ? plans_->half_rows_r2c : plans_->full_rows_r2c, in, out);
  Spectrum result(out_size);
  std::memcpy(static_cast<void*>(result.data()), out, static_cast<std::size_t>(out_size) * sizeof(fftw_complex));
  return result;
}

ScalarField SpectralGrid::inverse_rows(const Spectrum& spectrum, Slab slab) const {
  const Eigen::Index expect = spec_.rows(slab) * row_spectrum_size_;
  if (spectrum.size() != expect) throw StructuralError("row spectrum size mismatch");
  Scratch& s = scratch();
  const std::size_t N = spec_.size(slab);
  double* out = s.reals(N);
  fftw_complex* in = s.complexes(static_cast<std::size_t>(expect));
  std::memcpy(in, spectrum.data(), static_cast<std::size_t>(expect) * sizeof(fftw_complex));
  fftw_execute_dft_c2r(slab == Slab::Half ? plans_->half_rows_c2r : plans_->full_rows_c2r, in, out);
  ScalarField f(spec_, slab);
  Eigen::Map<const Eigen::ArrayXd> raw(out, static_cast<Eigen::Index>(N));
  f.values() = raw / static_cast<double>(spec_.tangential_count());
  return f;
}

Spectrum extended_spectrum(const ScalarField& half, Extension kind) {
  return SpectralGrid::of(half.spec())->forward(extend(half, kind));
}

}  // namespace sns
