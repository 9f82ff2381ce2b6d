#include "sns/random_fields.hpp"

#include <cmath>
#include <numbers>

namespace sns {

double BumpSum::value(const Point& x) const {
  double v = 0.0;
  for (const auto& b : bumps) {
    double r2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = x[static_cast<std::size_t>(i)] - b.centre[static_cast<std::size_t>(i)];
      r2 += d * d;
    }
    v += b.amplitude * std::exp(-0.5 * r2 / (b.sigma * b.sigma));
  }
  return v;
}

Point BumpSum::gradient(const Point& x) const {
  Point g{};
  for (const auto& b : bumps) {
    double r2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = x[static_cast<std::size_t>(i)] - b.centre[static_cast<std::size_t>(i)];
      r2 += d * d;
    }
    const double s2 = b.sigma * b.sigma;
    const double e = b.amplitude * std::exp(-0.5 * r2 / s2);
    for (int i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      g[k] -= e * (x[k] - b.centre[k]) / s2;
    }
  }
  return g;
}

BumpSum draw_bumps(std::mt19937_64& rng, const GridSpec& domain, const BumpOptions& opts) {
  if (opts.count < 0 || !(opts.sigma_fraction > 0)) throw DomainError("invalid bump options");
  std::uniform_real_distribution<double> tang(-opts.tangential_fraction * domain.L,
                                              opts.tangential_fraction * domain.L);
  std::uniform_real_distribution<double> norm(opts.normal_lo * domain.H, opts.normal_hi * domain.H);
  std::normal_distribution<double> amp(0.0, 1.0);
  BumpSum out;
  out.n = domain.n;
  for (int c = 0; c < opts.count; ++c) {
    GaussianBump b;
    for (int i = 0; i < domain.n - 1; ++i) b.centre[static_cast<std::size_t>(i)] = tang(rng);
    b.centre[static_cast<std::size_t>(domain.n - 1)] = norm(rng);
    b.sigma = opts.sigma_fraction * domain.H;
    b.amplitude = amp(rng);
    out.bumps.push_back(b);
  }
  return out;
}

ScalarField sample(const BumpSum& f, const GridSpec& spec, Slab slab) {
  return ScalarField::sample(spec, slab, [&](const Point& x) { return f.value(x); });
}

VectorField SolenoidalField::sample(const GridSpec& spec) const {
  const int n = spec.n;
  if (n != potential.n) throw StructuralError("field dimension does not match the grid");
  VectorField v(spec, Slab::Half);
  const std::size_t N = spec.size(Slab::Half);
  for (std::size_t i = 0; i < N; ++i) {
    const Point g = potential.gradient(spec.point(Slab::Half, i));
    const auto idx = static_cast<Eigen::Index>(i);
    if (n == 2) {
      v[0].values()[idx] = g[1];
      v[1].values()[idx] = -g[0];
    } else {
      v[0].values()[idx] = g[1] * axis[2] - g[2] * axis[1];
      v[1].values()[idx] = g[2] * axis[0] - g[0] * axis[2];
      v[2].values()[idx] = g[0] * axis[1] - g[1] * axis[0];
    }
  }
  return v;
}

SolenoidalField draw_solenoidal(std::mt19937_64& rng, const GridSpec& domain, const BumpOptions& opts) {
  SolenoidalField f;
  f.potential = draw_bumps(rng, domain, opts);
  if (domain.n == 3) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    const double a = angle(rng);
    f.axis = {std::cos(a), std::sin(a), 0.0};
  }
  return f;
}

TensorField TensorBumps::sample(const GridSpec& spec) const {
  TensorField F(spec, Slab::Half, true);
  std::size_t e = 0;
  for (int k = 0; k < n; ++k)
    for (int l = k; l < n; ++l) {
      ScalarField f = sns::sample(entries[e++], spec);
      f.row(0).setZero();
      F(k, l) = f;
      F(l, k) = f;
    }
  return F;
}

TensorBumps draw_tensor(std::mt19937_64& rng, const GridSpec& domain, const BumpOptions& opts) {
  TensorBumps t;
  t.n = domain.n;
  for (int k = 0; k < domain.n; ++k)
    for (int l = k; l < domain.n; ++l) t.entries.push_back(draw_bumps(rng, domain, opts));
  return t;
}

ScalarField TorusModes::sample(const GridSpec& spec) const {
  if (spec.n != n) throw StructuralError("mode dimension does not match the grid");
  std::vector<double> scale(static_cast<std::size_t>(n));
  for (int i = 0; i < n - 1; ++i) scale[static_cast<std::size_t>(i)] = 2.0 * std::numbers::pi / (2.0 * spec.L);
  scale[static_cast<std::size_t>(n - 1)] = 2.0 * std::numbers::pi / (2.0 * spec.H);
  return ScalarField::sample(spec, Slab::Full, [&](const Point& x) {
    double v = 0.0;
    for (const auto& m : modes) {
      double phase = 0.0;
      for (int i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        phase += m.k[k] * scale[k] * x[k];
      }
      v += m.a * std::cos(phase) + m.b * std::sin(phase);
    }
    return v;
  });
}

TorusModes draw_band_modes(std::mt19937_64& rng, const GridSpec& domain, int j_lo, int j_hi,
                           int modes_per_band) {
  const int n = domain.n;
  // Strictly below the Nyquist index of each axis of the doubled torus.
  const int kt_max = domain.m_tangential / 2 - 1;
  const int kn_max = domain.m_normal - 1;
  std::normal_distribution<double> amp(0.0, 1.0);
  TorusModes out;
  out.n = n;
  for (int j = j_lo; j <= j_hi; ++j) {
    const double lo = std::ldexp(1.0, j), hi = std::ldexp(1.0, j + 1);
    const int bt = std::min(kt_max, static_cast<int>(std::ceil(hi * 2.0 * domain.L)));
    const int bn = std::min(kn_max, static_cast<int>(std::ceil(hi * 2.0 * domain.H)));
    std::uniform_int_distribution<int> ut(-bt, bt), un(0, bn);
    int found = 0;
    for (int attempt = 0; attempt < 100000 && found < modes_per_band; ++attempt) {
      TorusModes::Mode m;
      double r2 = 0.0;
      for (int i = 0; i < n - 1; ++i) {
        m.k[static_cast<std::size_t>(i)] = ut(rng);
        r2 += std::pow(m.k[static_cast<std::size_t>(i)] / (2.0 * domain.L), 2);
      }
      m.k[static_cast<std::size_t>(n - 1)] = un(rng);
      r2 += std::pow(m.k[static_cast<std::size_t>(n - 1)] / (2.0 * domain.H), 2);
      const double r = std::sqrt(r2);
      if (r < lo || r >= hi) continue;
      m.a = amp(rng);
      m.b = amp(rng);
      out.modes.push_back(m);
      ++found;
    }
    if (found < modes_per_band) throw DomainError("band is not representable on the grid");
  }
  return out;
}

}  // namespace sns
