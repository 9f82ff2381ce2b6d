#include "sns/potential.hpp"

#include <cmath>
#include <numbers>

namespace sns {

double NewtonianKernel::operator()(const Point& x) const {
  double r2 = 0.0;
  for (int i = 0; i < n; ++i) r2 += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
  if (r2 == 0.0) throw DomainError("Newtonian kernel is singular at the origin");
  if (n == 2) return std::log(r2) / (4.0 * std::numbers::pi);
  // Area of the unit sphere in R^n times (2 - n).
  const double area = 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
  return std::pow(r2, 0.5 * (2 - n)) / ((2.0 - n) * area);
}

Eigen::ArrayXd hessian_multiplier(const SpectralGrid& g, int i, int j) {
  const int n = g.spec().n;
  if (i < 0 || i >= n || j < 0 || j >= n) throw DomainError("derivative index out of range");
  const Eigen::ArrayXd num = i == j ? Eigen::ArrayXd(g.frequency(i).square())
                                    : Eigen::ArrayXd(g.derivative_frequency(i) * g.derivative_frequency(j));
  const Eigen::ArrayXd& m2 = g.modulus_squared();
  return (m2 > 0).select(num / m2.max(1e-300), 0.0);
}

ScalarField newtonian_hessian(const ScalarField& half, int i, int j, Extension kind) {
  if (half.slab() != Slab::Half) throw StructuralError("potential acts on half-slab densities");
  auto g = SpectralGrid::of(half.spec());
  const Eigen::ArrayXd m = hessian_multiplier(*g, i, j);
  Spectrum s = g->forward(extend(half, kind));
  s *= m;
  return restrict_to_half(g->inverse(s));
}

ScalarField second_derivative_potential(const ScalarField& half, int i, int j, bool reflected) {
  return newtonian_hessian(half, i, j, reflected ? Extension::Mirror : Extension::Zero);
}

double hessian_l2_constant(const SpectralGrid& g) {
  double c = 0.0;
  for (int i = 0; i < g.spec().n; ++i)
    for (int j = 0; j < g.spec().n; ++j) c = std::max(c, hessian_multiplier(g, i, j).abs().maxCoeff());
  return c;
}

TraceEstimate trace_estimate_check(const ScalarField& half, const BesovIndex& idx, bool reflected,
                                   const DyadicFilterBank& bank) {
  idx.validate();
  if (!(idx.s > -1.0 + 1.0 / idx.p && idx.s < 0.0))
    throw DomainError("smoothness must satisfy -1 + 1/p < s < 0");
  TraceEstimate out;
  out.reliable = zero_extension_reliable(idx);
  const SpectralGrid& g = bank.grid();
  const Spectrum fs = g.forward(zero_extend(half));
  out.denominator = besov_norm(std::span<const Spectrum>(&fs, 1), idx, bank);
  if (out.denominator == 0.0) {
    out.skipped = true;
    return out;
  }
  const int n = half.spec().n;
  const Spectrum src = reflected ? g.forward(mirror_extend(half)) : fs;
  std::vector<Spectrum> entries;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Spectrum s = src * hessian_multiplier(g, i, j);
      entries.push_back(g.forward(zero_extend(restrict_to_half(g.inverse(s)))));
    }
  out.numerator = besov_norm(entries, idx, bank);
  out.ratio = out.numerator / out.denominator;
  return out;
}

}  // namespace sns
