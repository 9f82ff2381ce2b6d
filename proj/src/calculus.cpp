#include "sns/calculus.hpp"

#include <cmath>
#include <numbers>

namespace sns {

namespace {

void check_axis(const GridSpec& g, int axis) {
  if (axis < 0 || axis >= g.n) throw DomainError("axis out of range");
}

}  // namespace

ScalarField tangential_derivative(const ScalarField& f, int axis, int order) {
  const GridSpec& g = f.spec();
  if (axis < 0 || axis >= g.n - 1) throw DomainError("tangential axis out of range");
  if (order != 1 && order != 2) throw DomainError("derivative order must be 1 or 2");
  auto sg = SpectralGrid::of(g);
  Spectrum s = sg->forward_rows(f);
  const Eigen::Index rs = sg->row_spectrum_size();
  const double two_pi = 2.0 * std::numbers::pi;
  Eigen::ArrayXcd mult(rs);
  if (order == 1)
    mult = std::complex<double>(0.0, two_pi) * sg->row_derivative_frequency(axis).cast<std::complex<double>>();
  else
    mult = (-(two_pi * two_pi) * sg->row_frequency(axis).square()).cast<std::complex<double>>();
  for (int r = 0; r < f.rows(); ++r) s.segment(r * rs, rs) *= mult;
  return sg->inverse_rows(s, f.slab());
}

ScalarField normal_derivative(const ScalarField& f, int order) {
  if (order != 1 && order != 2) throw DomainError("derivative order must be 1 or 2");
  const GridSpec& g = f.spec();
  const int R = f.rows();
  const double h = g.h_normal();
  ScalarField out(g, f.slab());
  auto row = [&](int r) { return f.row(r); };
  if (f.slab() == Slab::Full) {
    auto w = [&](int r) { return row(((r % R) + R) % R); };
    for (int r = 0; r < R; ++r) {
      if (order == 1)
        out.row(r) = (w(r - 2) - 8.0 * w(r - 1) + 8.0 * w(r + 1) - w(r + 2)) / (12.0 * h);
      else
        out.row(r) = (-w(r - 2) + 16.0 * w(r - 1) - 30.0 * w(r) + 16.0 * w(r + 1) - w(r + 2)) / (12.0 * h * h);
    }
    return out;
  }
  const int M = R - 1;
  for (int r = 2; r <= M - 2; ++r) {
    if (order == 1)
      out.row(r) = (row(r - 2) - 8.0 * row(r - 1) + 8.0 * row(r + 1) - row(r + 2)) / (12.0 * h);
    else
      out.row(r) = (-row(r - 2) + 16.0 * row(r - 1) - 30.0 * row(r) + 16.0 * row(r + 1) - row(r + 2)) /
                   (12.0 * h * h);
  }
  // One-sided stencils; sign flips for the top boundary in first derivatives.
  for (int side = 0; side < 2; ++side) {
    const double dir = side == 0 ? 1.0 : -1.0;
    const int b = side == 0 ? 0 : M;
    auto q = [&](int k) { return row(b + static_cast<int>(dir) * k); };
    if (order == 1) {
      out.row(b) = dir * (-25.0 * q(0) + 48.0 * q(1) - 36.0 * q(2) + 16.0 * q(3) - 3.0 * q(4)) / (12.0 * h);
      out.row(b + static_cast<int>(dir)) = dir * (-3.0 * q(0) - 10.0 * q(1) + 18.0 * q(2) - 6.0 * q(3) + q(4)) / (12.0 * h);
    } else {
      out.row(b) = (45.0 * q(0) - 154.0 * q(1) + 214.0 * q(2) - 156.0 * q(3) + 61.0 * q(4) - 10.0 * q(5)) /
                   (12.0 * h * h);
      out.row(b + static_cast<int>(dir)) = (10.0 * q(0) - 15.0 * q(1) - 4.0 * q(2) + 14.0 * q(3) - 6.0 * q(4) + q(5)) /
                         (12.0 * h * h);
    }
  }
  return out;
}

ScalarField partial(const ScalarField& f, int axis) {
  check_axis(f.spec(), axis);
  return axis == f.spec().n - 1 ? normal_derivative(f) : tangential_derivative(f, axis);
}

VectorField gradient(const ScalarField& f) {
  std::vector<ScalarField> c;
  for (int a = 0; a < f.spec().n; ++a) c.push_back(partial(f, a));
  return VectorField(std::move(c));
}

ScalarField divergence(const VectorField& v) {
  ScalarField d = partial(v[0], 0);
  for (int a = 1; a < v.dim(); ++a) d += partial(v[a], a);
  return d;
}

VectorField divergence(const TensorField& F) {
  const int n = F.dim();
  std::vector<ScalarField> c;
  for (int m = 0; m < n; ++m) {
    ScalarField s = partial(F(0, m), 0);
    for (int k = 1; k < n; ++k) s += partial(F(k, m), k);
    c.push_back(std::move(s));
  }
  return VectorField(std::move(c));
}

ScalarField laplacian(const ScalarField& f) {
  ScalarField out = normal_derivative(f, 2);
  for (int a = 0; a < f.spec().n - 1; ++a) out += tangential_derivative(f, a, 2);
  return out;
}

VectorField laplacian(const VectorField& v) {
  std::vector<ScalarField> c;
  for (int i = 0; i < v.dim(); ++i) c.push_back(laplacian(v[i]));
  return VectorField(std::move(c));
}

ScalarField spectral_partial(const ScalarField& full, int axis) {
  check_axis(full.spec(), axis);
  auto sg = SpectralGrid::of(full.spec());
  Spectrum s = sg->forward(full);
  s *= std::complex<double>(0.0, 2.0 * std::numbers::pi) *
       sg->derivative_frequency(axis).cast<std::complex<double>>();
  return sg->inverse(s);
}

ScalarField spectral_divergence(const VectorField& half) {
  auto sg = SpectralGrid::of(half.spec());
  Spectrum acc = Spectrum::Zero(sg->spectrum_size());
  for (int a = 0; a < half.dim(); ++a)
    acc += sg->forward(zero_extend(half[a])) * sg->derivative_frequency(a).cast<std::complex<double>>();
  acc *= std::complex<double>(0.0, 2.0 * std::numbers::pi);
  return restrict_to_half(sg->inverse(acc));
}

}  // namespace sns
