#ifndef SNS_GRID_HPP
#define SNS_GRID_HPP

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sns/errors.hpp"

namespace sns {

// Coordinates: entries [0, n-1) are tangential, entry n-1 is the normal one.
using Point = std::array<double, 3>;

enum class Slab { Half, Full };

// Truncated half space [-L, L)^{n-1} x [0, H] and its doubled torus
// [-L, L)^{n-1} x [-H, H). Normal rows are stored first (row-major).
struct GridSpec {
  int n = 2;
  double L = 3.14159265358979323846;
  double H = 3.14159265358979323846;
  int m_tangential = 128;
  int m_normal = 128;
  double dt = 1e-3;
  double T = 0.25;

  void validate() const;

  int steps() const;
  double time(int k) const { return k * dt; }
  int tangential_count() const;
  int rows(Slab slab) const { return slab == Slab::Half ? m_normal + 1 : 2 * m_normal; }
  std::size_t size(Slab slab) const {
    return static_cast<std::size_t>(rows(slab)) * tangential_count();
  }
  double h_tangential() const { return 2.0 * L / m_tangential; }
  double h_normal() const { return H / m_normal; }
  double normal_coordinate(Slab slab, int row) const;
  Point point(Slab slab, std::size_t index) const;

  GridSpec refined(int factor = 2) const;
  bool same_space(const GridSpec& other) const;
  bool operator==(const GridSpec&) const = default;
};

class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(const GridSpec& spec, Slab slab);
  ScalarField(const GridSpec& spec, Slab slab, Eigen::ArrayXd values);

  template <class F>
  static ScalarField sample(const GridSpec& spec, Slab slab, F&& f) {
    ScalarField out(spec, slab);
    for (Eigen::Index i = 0; i < out.values_.size(); ++i)
      out.values_[i] = f(spec.point(slab, static_cast<std::size_t>(i)));
    return out;
  }

  const GridSpec& spec() const { return spec_; }
  Slab slab() const { return slab_; }
  int rows() const { return spec_.rows(slab_); }
  int row_length() const { return spec_.tangential_count(); }
  const Eigen::ArrayXd& values() const { return values_; }
  Eigen::ArrayXd& values() { return values_; }
  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  Eigen::Index size() const { return values_.size(); }

  auto row(int r) { return values_.segment(static_cast<Eigen::Index>(r) * row_length(), row_length()); }
  auto row(int r) const {
    return values_.segment(static_cast<Eigen::Index>(r) * row_length(), row_length());
  }

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double a);

 private:
  GridSpec spec_;
  Slab slab_ = Slab::Half;
  Eigen::ArrayXd values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double a, ScalarField f);

void require_compatible(const ScalarField& a, const ScalarField& b);

class VectorField {
 public:
  VectorField() = default;
  VectorField(const GridSpec& spec, Slab slab);
  explicit VectorField(std::vector<ScalarField> components);

  int dim() const { return static_cast<int>(components_.size()); }
  const GridSpec& spec() const { return components_.front().spec(); }
  Slab slab() const { return components_.front().slab(); }
  ScalarField& operator[](int i) { return components_[static_cast<std::size_t>(i)]; }
  const ScalarField& operator[](int i) const { return components_[static_cast<std::size_t>(i)]; }
  const std::vector<ScalarField>& components() const { return components_; }
  bool empty() const { return components_.empty(); }

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double a);

 private:
  std::vector<ScalarField> components_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double a, VectorField v);

// n x n tensor, entry (k, l) stored at k * n + l.
class TensorField {
 public:
  TensorField() = default;
  TensorField(const GridSpec& spec, Slab slab, bool symmetric);

  int dim() const { return n_; }
  bool symmetric() const { return symmetric_; }
  const GridSpec& spec() const { return entries_.front().spec(); }
  Slab slab() const { return entries_.front().slab(); }
  ScalarField& operator()(int k, int l) { return entries_[static_cast<std::size_t>(k * n_ + l)]; }
  const ScalarField& operator()(int k, int l) const {
    return entries_[static_cast<std::size_t>(k * n_ + l)];
  }
  const std::vector<ScalarField>& entries() const { return entries_; }

  // Symmetric storage check and vanishing bottom row at x_n = 0.
  void check_admissible() const;
  TensorField& operator*=(double a);

 private:
  int n_ = 0;
  bool symmetric_ = false;
  std::vector<ScalarField> entries_;
};

template <class Field>
struct TimeSeries {
  double dt = 0.0;
  std::vector<Field> samples;

  double time(std::size_t k) const { return static_cast<double>(k) * dt; }
  std::size_t size() const { return samples.size(); }
  const Field& operator[](std::size_t k) const { return samples[k]; }
  Field& operator[](std::size_t k) { return samples[k]; }
};

using VectorSeries = TimeSeries<VectorField>;

enum class Extension { Zero, Mirror, Even, Odd };

ScalarField extend(const ScalarField& half, Extension kind);
ScalarField reflect(const ScalarField& half);
ScalarField zero_extend(const ScalarField& half);
ScalarField mirror_extend(const ScalarField& half);
ScalarField odd_extend(const ScalarField& half);
ScalarField restrict_to_half(const ScalarField& full);
ScalarField flip_normal(const ScalarField& full);
VectorField zero_extend(const VectorField& half);
VectorField restrict_to_half(const VectorField& full);

// Per-sample quadrature weights: trapezoid in x_n on the half slab,
// uniform elsewhere.
Eigen::ArrayXd quadrature_weights(const GridSpec& spec, Slab slab);

double lp_norm(const ScalarField& f, double p);
double lp_norm(const VectorField& v, double p);
double lp_norm(const TensorField& F, double p);
double inner_product(const ScalarField& a, const ScalarField& b);
double inner_product(const VectorField& a, const VectorField& b);

// |x|^p with exact fast paths for p = 1, 2, 4.
inline double abs_pow(double x, double p) {
  const double a = x < 0 ? -x : x;
  if (p == 2.0) return a * a;
  if (p == 4.0) return (a * a) * (a * a);
  if (p == 1.0) return a;
  return std::pow(a, p);
}

std::vector<double> lp_norms(const VectorSeries& series, double p);

// Binary container: "SNSFIELD" magic, int64 n, m_tangential, m_normal,
// slab (0 half, 1 full), component count, float64 L, H, then row-major
// float64 samples component after component. Little-endian.
void write_field(const std::filesystem::path& path, const VectorField& v);
void write_field(const std::filesystem::path& path, const ScalarField& f);
VectorField read_field(const std::filesystem::path& path);

// FNV-1a over the raw bytes of every sample.
std::uint64_t checksum(const VectorField& v);
std::uint64_t fnv1a(const void* data, std::size_t bytes, std::uint64_t seed = 14695981039346656037ULL);

// One file per step plus manifest.csv with index,t,checksum.
void write_series(const std::filesystem::path& dir, const VectorSeries& series,
                  int stride = 1);

}  // namespace sns

#endif
