#include "sns/grid.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

static_assert(std::endian::native == std::endian::little,
              "binary field container assumes a little-endian host");

namespace sns {

void GridSpec::validate() const {
  if (n != 2 && n != 3) throw ConfigurationError("grid dimension n must be 2 or 3");
  if (!(L > 0) || !(H > 0)) throw ConfigurationError("grid extents L and H must be positive");
  if (m_tangential < 16 || m_normal < 16)
    throw ConfigurationError("grid needs at least 16 points per direction");
  if (m_tangential % 2 != 0 || m_normal % 2 != 0)
    throw ConfigurationError("grid point counts must be even");
  if (!(dt > 0) || !(T > 0)) throw ConfigurationError("time step and horizon must be positive");
  const double k = T / dt;
  if (std::abs(k - std::round(k)) > 1e-9 * std::max(1.0, k))
    throw ConfigurationError("horizon T must be an integer multiple of dt");
}

int GridSpec::steps() const { return static_cast<int>(std::lround(T / dt)); }

int GridSpec::tangential_count() const {
  return n == 2 ? m_tangential : m_tangential * m_tangential;
}

double GridSpec::normal_coordinate(Slab slab, int row) const {
  return slab == Slab::Half ? row * h_normal() : (row - m_normal) * h_normal();
}

Point GridSpec::point(Slab slab, std::size_t index) const {
  const int tc = tangential_count();
  const int row = static_cast<int>(index / static_cast<std::size_t>(tc));
  const int t = static_cast<int>(index % static_cast<std::size_t>(tc));
  Point x{0.0, 0.0, 0.0};
  const double h = h_tangential();
  if (n == 2) {
    x[0] = -L + t * h;
  } else {
    x[0] = -L + (t / m_tangential) * h;
    x[1] = -L + (t % m_tangential) * h;
  }
  x[static_cast<std::size_t>(n - 1)] = normal_coordinate(slab, row);
  return x;
}

GridSpec GridSpec::refined(int factor) const {
  GridSpec g = *this;
  g.m_tangential *= factor;
  g.m_normal *= factor;
  return g;
}

bool GridSpec::same_space(const GridSpec& o) const {
  return n == o.n && L == o.L && H == o.H && m_tangential == o.m_tangential &&
         m_normal == o.m_normal;
}

ScalarField::ScalarField(const GridSpec& spec, Slab slab)
    : spec_(spec), slab_(slab), values_(Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(spec.size(slab)))) {}

ScalarField::ScalarField(const GridSpec& spec, Slab slab, Eigen::ArrayXd values)
    : spec_(spec), slab_(slab), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.size()) != spec.size(slab))
    throw StructuralError("sample count does not match the grid");
}

void require_compatible(const ScalarField& a, const ScalarField& b) {
  if (a.slab() != b.slab() || !a.spec().same_space(b.spec()))
    throw StructuralError("fields live on different grids or slabs");
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_compatible(*this, o);
  values_ += o.values_;
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_compatible(*this, o);
  values_ -= o.values_;
  return *this;
}

ScalarField& ScalarField::operator*=(double a) {
  values_ *= a;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double a, ScalarField f) { return f *= a; }

VectorField::VectorField(const GridSpec& spec, Slab slab) {
  for (int i = 0; i < spec.n; ++i) components_.emplace_back(spec, slab);
}

VectorField::VectorField(std::vector<ScalarField> components) : components_(std::move(components)) {
  if (components_.empty()) throw StructuralError("vector field needs components");
  if (static_cast<int>(components_.size()) != components_.front().spec().n)
    throw StructuralError("vector field component count must equal n");
  for (const auto& c : components_) require_compatible(components_.front(), c);
}

VectorField& VectorField::operator+=(const VectorField& o) {
  if (o.dim() != dim()) throw StructuralError("vector dimension mismatch");
  for (int i = 0; i < dim(); ++i) (*this)[i] += o[i];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  if (o.dim() != dim()) throw StructuralError("vector dimension mismatch");
  for (int i = 0; i < dim(); ++i) (*this)[i] -= o[i];
  return *this;
}

VectorField& VectorField::operator*=(double a) {
  for (auto& c : components_) c *= a;
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double a, VectorField v) { return v *= a; }

TensorField::TensorField(const GridSpec& spec, Slab slab, bool symmetric)
    : n_(spec.n), symmetric_(symmetric) {
  for (int i = 0; i < n_ * n_; ++i) entries_.emplace_back(spec, slab);
}

void TensorField::check_admissible() const {
  if (entries_.size() != static_cast<std::size_t>(n_ * n_))
    throw StructuralError("tensor must have n*n entries");
  if (slab() != Slab::Half) throw StructuralError("admissible tensors live on the half slab");
  if (symmetric_) {
    for (int k = 0; k < n_; ++k)
      for (int l = k + 1; l < n_; ++l)
        if (((*this)(k, l).values() != (*this)(l, k).values()).any())
          throw StructuralError("tensor flagged symmetric but entries differ");
  }
  for (int l = 0; l < n_; ++l)
    if (((*this)(n_ - 1, l).row(0) != 0.0).any())
      throw StructuralError("tensor normal row must vanish on the boundary x_n = 0");
}

TensorField& TensorField::operator*=(double a) {
  for (auto& e : entries_) e *= a;
  return *this;
}

ScalarField extend(const ScalarField& half, Extension kind) {
  if (half.slab() != Slab::Half) throw StructuralError("extension expects a half-slab field");
  const GridSpec& g = half.spec();
  const int m = g.m_normal;
  ScalarField out(g, Slab::Full);
  for (int r = 0; r < 2 * m; ++r) {
    const bool upper = r >= m;
    const int k = upper ? r - m : m - r;
    double sign = 0.0;
    switch (kind) {
      case Extension::Zero: sign = upper ? 1.0 : 0.0; break;
      case Extension::Mirror: sign = upper ? 0.0 : 1.0; break;
      case Extension::Even: sign = 1.0; break;
      case Extension::Odd: sign = (r == m || r == 0) ? 0.0 : (upper ? 1.0 : -1.0); break;
    }
    if (sign == 0.0) continue;
    out.row(r) = sign * half.row(k);
  }
  return out;
}

ScalarField reflect(const ScalarField& half) { return extend(half, Extension::Even); }
ScalarField zero_extend(const ScalarField& half) { return extend(half, Extension::Zero); }
ScalarField mirror_extend(const ScalarField& half) { return extend(half, Extension::Mirror); }
ScalarField odd_extend(const ScalarField& half) { return extend(half, Extension::Odd); }

ScalarField restrict_to_half(const ScalarField& full) {
  if (full.slab() != Slab::Full) throw StructuralError("restriction expects a full-slab field");
  const GridSpec& g = full.spec();
  const int m = g.m_normal;
  ScalarField out(g, Slab::Half);
  for (int k = 0; k < m; ++k) out.row(k) = full.row(k + m);
  out.row(m) = full.row(0);
  return out;
}

ScalarField flip_normal(const ScalarField& full) {
  if (full.slab() != Slab::Full) throw StructuralError("normal flip expects a full-slab field");
  const int m = full.spec().m_normal;
  ScalarField out(full.spec(), Slab::Full);
  for (int r = 0; r < 2 * m; ++r) out.row(r) = full.row((2 * m - r) % (2 * m));
  return out;
}

VectorField zero_extend(const VectorField& half) {
  std::vector<ScalarField> c;
  for (int i = 0; i < half.dim(); ++i) c.push_back(zero_extend(half[i]));
  return VectorField(std::move(c));
}

VectorField restrict_to_half(const VectorField& full) {
  std::vector<ScalarField> c;
  for (int i = 0; i < full.dim(); ++i) c.push_back(restrict_to_half(full[i]));
  return VectorField(std::move(c));
}

Eigen::ArrayXd quadrature_weights(const GridSpec& g, Slab slab) {
  const double cell = std::pow(g.h_tangential(), g.n - 1) * g.h_normal();
  Eigen::ArrayXd w = Eigen::ArrayXd::Constant(static_cast<Eigen::Index>(g.size(slab)), cell);
  if (slab == Slab::Half) {
    const int tc = g.tangential_count();
    w.head(tc) *= 0.5;
    w.tail(tc) *= 0.5;
  }
  return w;
}

namespace {

void check_exponent(double p) {
  if (!(p >= 1.0)) throw DomainError("Lebesgue exponent must satisfy p >= 1");
}

double reduce_norm(const Eigen::ArrayXd& pointwise_abs, const GridSpec& g, Slab slab, double p) {
  if (std::isinf(p)) return pointwise_abs.size() ? pointwise_abs.maxCoeff() : 0.0;
  const double cell = std::pow(g.h_tangential(), g.n - 1) * g.h_normal();
  const int tc = g.tangential_count();
  const Eigen::Index N = pointwise_abs.size();
  double s = 0.0;
  for (Eigen::Index i = 0; i < N; ++i) s += abs_pow(pointwise_abs[i], p);
  if (slab == Slab::Half) {
    double edge = 0.0;
    for (Eigen::Index i = 0; i < tc; ++i)
      edge += abs_pow(pointwise_abs[i], p) + abs_pow(pointwise_abs[N - tc + i], p);
    s -= 0.5 * edge;
  }
  return std::pow(cell * s, 1.0 / p);
}

}  // namespace

double lp_norm(const ScalarField& f, double p) {
  check_exponent(p);
  return reduce_norm(f.values().abs(), f.spec(), f.slab(), p);
}

double lp_norm(const VectorField& v, double p) {
  check_exponent(p);
  Eigen::ArrayXd m = Eigen::ArrayXd::Zero(v[0].size());
  for (int i = 0; i < v.dim(); ++i) m += v[i].values().square();
  return reduce_norm(m.sqrt(), v.spec(), v.slab(), p);
}

double lp_norm(const TensorField& F, double p) {
  check_exponent(p);
  Eigen::ArrayXd m = Eigen::ArrayXd::Zero(F(0, 0).size());
  for (const auto& e : F.entries()) m += e.values().square();
  return reduce_norm(m.sqrt(), F.spec(), F.slab(), p);
}

double inner_product(const ScalarField& a, const ScalarField& b) {
  require_compatible(a, b);
  return (quadrature_weights(a.spec(), a.slab()) * a.values() * b.values()).sum();
}

double inner_product(const VectorField& a, const VectorField& b) {
  double s = 0.0;
  const Eigen::ArrayXd w = quadrature_weights(a.spec(), a.slab());
  for (int i = 0; i < a.dim(); ++i) {
    require_compatible(a[i], b[i]);
    s += (w * a[i].values() * b[i].values()).sum();
  }
  return s;
}

std::vector<double> lp_norms(const VectorSeries& series, double p) {
  std::vector<double> out;
  out.reserve(series.size());
  for (const auto& v : series.samples) out.push_back(lp_norm(v, p));
  return out;
}

namespace {

constexpr char kMagic[8] = {'S', 'N', 'S', 'F', 'I', 'E', 'L', 'D'};

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw StructuralError("truncated field file");
  return v;
}

}  // namespace

void write_field(const std::filesystem::path& path, const VectorField& v) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DomainError("cannot open " + path.string() + " for writing");
  const GridSpec& g = v.spec();
  os.write(kMagic, sizeof(kMagic));
  put<std::int64_t>(os, g.n);
  put<std::int64_t>(os, g.m_tangential);
  put<std::int64_t>(os, g.m_normal);
  put<std::int64_t>(os, v.slab() == Slab::Half ? 0 : 1);
  put<std::int64_t>(os, v.dim());
  put<double>(os, g.L);
  put<double>(os, g.H);
  for (int i = 0; i < v.dim(); ++i)
    os.write(reinterpret_cast<const char*>(v[i].data()),
             static_cast<std::streamsize>(sizeof(double) * static_cast<std::size_t>(v[i].size())));
}

void write_field(const std::filesystem::path& path, const ScalarField& f) {
  // A scalar is stored as a one-component container.
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DomainError("cannot open " + path.string() + " for writing");
  const GridSpec& g = f.spec();
  os.write(kMagic, sizeof(kMagic));
  put<std::int64_t>(os, g.n);
  put<std::int64_t>(os, g.m_tangential);
  put<std::int64_t>(os, g.m_normal);
  put<std::int64_t>(os, f.slab() == Slab::Half ? 0 : 1);
  put<std::int64_t>(os, 1);
  put<double>(os, g.L);
  put<double>(os, g.H);
  os.write(reinterpret_cast<const char*>(f.data()),
           static_cast<std::streamsize>(sizeof(double) * static_cast<std::size_t>(f.size())));
}

VectorField read_field(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DomainError("cannot open " + path.string());
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw StructuralError("not a field container: " + path.string());
  GridSpec g;
  g.n = static_cast<int>(get<std::int64_t>(is));
  g.m_tangential = static_cast<int>(get<std::int64_t>(is));
  g.m_normal = static_cast<int>(get<std::int64_t>(is));
  const Slab slab = get<std::int64_t>(is) == 0 ? Slab::Half : Slab::Full;
  const auto count = get<std::int64_t>(is);
  g.L = get<double>(is);
  g.H = get<double>(is);
  std::vector<ScalarField> comps;
  for (std::int64_t c = 0; c < count; ++c) {
    ScalarField f(g, slab);
    is.read(reinterpret_cast<char*>(f.data()),
            static_cast<std::streamsize>(sizeof(double) * static_cast<std::size_t>(f.size())));
    if (!is) throw StructuralError("truncated field file");
    comps.push_back(std::move(f));
  }
  if (count == g.n) return VectorField(std::move(comps));
  throw StructuralError("field container holds a scalar; expected n components");
}

std::uint64_t fnv1a(const void* data, std::size_t bytes, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < bytes; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t checksum(const VectorField& v) {
  std::uint64_t h = 14695981039346656037ULL;
  for (int i = 0; i < v.dim(); ++i)
    h = fnv1a(v[i].data(), sizeof(double) * static_cast<std::size_t>(v[i].size()), h);
  return h;
}

void write_series(const std::filesystem::path& dir, const VectorSeries& series, int stride) {
  std::filesystem::create_directories(dir);
  std::ofstream manifest(dir / "manifest.csv");
  manifest << "index,t,checksum\n";
  for (std::size_t k = 0; k < series.size(); k += static_cast<std::size_t>(stride)) {
    std::ostringstream name;
    name << "step_" << std::setw(6) << std::setfill('0') << k << ".bin";
    write_field(dir / name.str(), series[k]);
    manifest << k << ',' << std::setprecision(17) << series.time(k) << ',' << std::hex
             << std::setw(16) << std::setfill('0') << checksum(series[k]) << std::dec
             << std::setfill(' ') << '\n';
  }
}

}  // namespace sns
