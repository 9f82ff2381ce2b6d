#include "sns/stokes.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "sns/heat.hpp"
#include "sns/helmholtz.hpp"

namespace sns {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::complex<double> kI{0.0, 1.0};

// Weights of int_0^h e^{-k (h - z)} f(z) dz for f linear between f0 = f(0)
// and f1 = f(h): returns {w0, w1} and E = e^{-k h}.
struct ExpLinear {
  double E, w0, w1;
};

ExpLinear exp_linear(double k, double h) {
  const double x = k * h;
  if (x < 1e-4) {
    const double w0 = h * (0.5 - x / 3.0 + x * x / 8.0);
    const double total = h * (1.0 - x / 2.0 + x * x / 6.0);
    return {std::exp(-x), w0, total - w0};
  }
  const double E = std::exp(-x);
  const double w0 = (1.0 - E * (1.0 + x)) / (k * x);
  return {E, w0, (1.0 - E) / k - w0};
}

void require_half_vector(const VectorField& v) {
  if (v.empty() || v.slab() != Slab::Half) throw StructuralError("expected a half-slab vector field");
  if (v.dim() != v.spec().n) throw StructuralError("vector dimension must equal n");
}

}  // namespace

ScalarField riesz_tangential(const ScalarField& f, int axis) {
  const int n = f.spec().n;
  if (axis < 0 || axis >= n - 1) throw DomainError("Riesz transform acts on tangential axes only");
  auto g = SpectralGrid::of(f.spec());
  const Eigen::ArrayXd& xi = g->row_derivative_frequency(axis);
  const Eigen::ArrayXd& mod = g->row_modulus();
  const Eigen::Index rs = g->row_spectrum_size();
  Spectrum s = g->forward_rows(f);
  for (int r = 0; r < f.rows(); ++r)
    for (Eigen::Index c = 0; c < rs; ++c) {
      const double m = mod[c];
      s[r * rs + c] *= m > 0 ? kI * (xi[c] / m) : std::complex<double>(0.0);
    }
  return g->inverse_rows(s, f.slab());
}

StokesPropagator::StokesPropagator(const GridSpec& spec) : spec_(spec), grid_(SpectralGrid::of(spec)) {
  reset();
}

void StokesPropagator::reset() {
  const Eigen::Index N = grid_->spectrum_size();
  odd_.assign(static_cast<std::size_t>(spec_.n), Spectrum::Zero(N));
  mirror_.assign(static_cast<std::size_t>(spec_.n - 1), Spectrum::Zero(N));
}

StokesPropagator::Prepared StokesPropagator::prepare(const VectorField& data) const {
  require_half_vector(data);
  if (!data.spec().same_space(spec_)) throw StructuralError("data is not on the propagator grid");
  Prepared p;
  for (int i = 0; i < spec_.n; ++i) {
    p.odd.push_back(grid_->forward(odd_extend(data[i])));
    if (i < spec_.n - 1) p.mirror.push_back(grid_->forward(mirror_extend(data[i])));
  }
  return p;
}

void StokesPropagator::add(const VectorField& data, double weight) {
  if (weight == 0.0) {
    require_half_vector(data);
    return;
  }
  add(prepare(data), weight);
}

void StokesPropagator::add(const Prepared& data, double weight) {
  if (data.odd.size() != odd_.size() || data.mirror.size() != mirror_.size())
    throw StructuralError("prepared data does not match the propagator");
  if (weight == 0.0) return;
  for (std::size_t i = 0; i < odd_.size(); ++i) odd_[i] += weight * data.odd[i];
  for (std::size_t i = 0; i < mirror_.size(); ++i) mirror_[i] += weight * data.mirror[i];
}

void StokesPropagator::assign(const Prepared& data, const Eigen::ArrayXd& factor) {
  if (data.odd.size() != odd_.size() || data.mirror.size() != mirror_.size())
    throw StructuralError("prepared data does not match the propagator");
  if (factor.size() != grid_->spectrum_size()) throw StructuralError("factor size mismatch");
  for (std::size_t i = 0; i < odd_.size(); ++i) odd_[i] = data.odd[i] * factor;
  for (std::size_t i = 0; i < mirror_.size(); ++i) mirror_[i] = data.mirror[i] * factor;
}

void StokesPropagator::advance(double tau) {
  if (!(tau >= 0.0)) throw DomainError("propagation time must be non-negative");
  if (tau == 0.0) return;
  if (tau != cached_tau_) {
    cached_multiplier_ = heat_multiplier(*grid_, tau);
    cached_tau_ = tau;
  }
  for (auto& s : odd_) s *= cached_multiplier_;
  for (auto& s : mirror_) s *= cached_multiplier_;
}

// Q = sum_j R'_j h_j and W = (d_n + |D'|)^{-1} Q, both on the doubled torus.
Spectrum StokesPropagator::solve_w() const {
  const SpectralGrid& g = *grid_;
  const int n = spec_.n;
  const Eigen::ArrayXd& tm = g.tangential_modulus();
  const Eigen::ArrayXd& xn = g.derivative_frequency(n - 1);
  Spectrum w = Spectrum::Zero(g.spectrum_size());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    const double m = tm[i];
    if (m == 0.0) continue;
    std::complex<double> q = 0.0;
    for (int j = 0; j < n - 1; ++j) q += kI * (g.derivative_frequency(j)[i] / m) * mirror_[static_cast<std::size_t>(j)][i];
    w[i] = q / (kTwoPi * std::complex<double>(m, xn[i]));
  }
  return w;
}

VectorField StokesPropagator::evaluate() const {
  const SpectralGrid& g = *grid_;
  const int n = spec_.n;
  const Spectrum w = solve_w();

  // Boundary value W(x', 0) per tangential frequency: full row m_n.
  const Eigen::Index rs = g.row_spectrum_size();
  const Eigen::ArrayXi& na = g.normal_index();
  const Eigen::ArrayXi& ri = g.row_index();
  Spectrum c = Spectrum::Zero(rs);
  for (Eigen::Index i = 0; i < w.size(); ++i) c[ri[i]] += (na[i] % 2 == 0 ? 1.0 : -1.0) * w[i];
  c /= static_cast<double>(2 * spec_.m_normal);

  const int rows = spec_.rows(Slab::Half);
  const double h = spec_.h_normal();
  const Eigen::ArrayXd kappa = kTwoPi * g.row_modulus();
  Spectrum decay(rows * rs);
  for (int k = 0; k < rows; ++k) decay.segment(k * rs, rs) = c * (-kappa * (k * h)).exp();

  std::vector<ScalarField> out;
  for (int i = 0; i < n; ++i) {
    Spectrum u = odd_[static_cast<std::size_t>(i)];
    Spectrum corr(rows * rs);
    if (i < n - 1) {
      u -= 2.0 * kTwoPi * kI * g.derivative_frequency(i) * w;
      const Eigen::ArrayXd& xr = g.row_derivative_frequency(i);
      for (int k = 0; k < rows; ++k)
        corr.segment(k * rs, rs) = 2.0 * kTwoPi * kI * xr * decay.segment(k * rs, rs);
    } else {
      u += 2.0 * kTwoPi * g.tangential_modulus() * w;
      for (int k = 0; k < rows; ++k) corr.segment(k * rs, rs) = -2.0 * kappa * decay.segment(k * rs, rs);
    }
    ScalarField f = restrict_to_half(g.inverse(u));
    f += g.inverse_rows(corr, Slab::Half);
    out.push_back(std::move(f));
  }
  return VectorField(std::move(out));
}

StokesPropagator::Parts StokesPropagator::evaluate_parts() const {
  const SpectralGrid& g = *grid_;
  const int n = spec_.n;
  Parts p;
  std::vector<ScalarField> heat;
  for (int i = 0; i < n; ++i) heat.push_back(restrict_to_half(g.inverse(odd_[static_cast<std::size_t>(i)])));
  p.heat = VectorField(std::move(heat));

  Spectrum q = Spectrum::Zero(g.spectrum_size());
  const Eigen::ArrayXd& tm = g.tangential_modulus();
  for (int j = 0; j < n - 1; ++j)
    q += kI * (tm > 0).select(g.derivative_frequency(j) / tm.max(1e-300), 0.0) * mirror_[static_cast<std::size_t>(j)];
  p.normal = VectorField(spec_, Slab::Half);
  p.normal[n - 1] = restrict_to_half(g.inverse(2.0 * q));

  p.layer = evaluate() - p.heat - p.normal;
  return p;
}

double relative_divergence(const VectorField& half) {
  require_half_vector(half);
  auto g = SpectralGrid::of(half.spec());
  const int n = half.dim();
  Spectrum div = Spectrum::Zero(g->spectrum_size());
  Eigen::ArrayXd scale = Eigen::ArrayXd::Zero(g->spectrum_size());
  for (int a = 0; a < n; ++a) {
    const Spectrum s = g->forward(zero_extend(half[a]));
    div += g->frequency(a) * s;
    scale += g->modulus_squared() * s.abs2();
  }
  const Eigen::ArrayXd& herm = g->hermitian_weight();
  const double den = (herm * scale).sum();
  return den > 0 ? std::sqrt((herm * div.abs2()).sum() / den) : 0.0;
}

VectorSeries stokes_from_initial(const VectorField& u0, int steps, double dt) {
  require_half_vector(u0);
  if (steps < 0 || !(dt > 0)) throw DomainError("need steps >= 0 and dt > 0");
  if (relative_divergence(u0) > 1e-6) throw PreconditionError("initial velocity is not solenoidal");
  StokesPropagator prop(u0.spec());
  prop.add(u0, 1.0);
  VectorSeries out{dt, {}};
  out.samples.push_back(prop.evaluate());
  for (int k = 0; k < steps; ++k) {
    prop.advance(dt);
    out.samples.push_back(prop.evaluate());
  }
  return out;
}

VectorSeries stokes_from_forcing(const std::function<TensorField(int)>& forcing, int steps, double dt) {
  if (steps < 0 || !(dt > 0)) throw DomainError("need steps >= 0 and dt > 0");
  VectorSeries out{dt, {}};
  if (steps == 0) return out;
  TensorField F = forcing(0);
  StokesPropagator prop(F.spec());
  out.samples.push_back(VectorField(F.spec(), Slab::Half));
  for (int k = 0; k < steps; ++k) {
    if (k > 0) F = forcing(k);
    prop.add(helmholtz_apply(F), -dt);
    prop.advance(dt);
    out.samples.push_back(prop.evaluate());
  }
  return out;
}

VectorSeries stokes_from_forcing(const TimeSeries<TensorField>& F) {
  if (F.size() == 0) return {F.dt, {}};
  return stokes_from_forcing([&](int k) { return F[static_cast<std::size_t>(k)]; },
                             static_cast<int>(F.size()) - 1, F.dt);
}

VectorField apply_stokes_kernel(const VectorField& g, double t, double s) {
  require_half_vector(g);
  if (!(t > s)) throw DomainError("kernel needs t > s");
  const double tau = t - s;
  const GridSpec& spec = g.spec();
  const int n = spec.n;
  auto grid = SpectralGrid::of(spec);
  const Eigen::Index rs = grid->row_spectrum_size();
  const int rows = spec.rows(Slab::Half);
  const double h = spec.h_normal();
  const Eigen::ArrayXd kappa = kTwoPi * grid->row_modulus();

  std::vector<ExpLinear> weights;
  for (Eigen::Index c = 0; c < rs; ++c) weights.push_back(exp_linear(kappa[c], h));

  // Sum_j k_j I_j with I_j(x_n) = int_0^{x_n} e^{-kappa (x_n - z)} h_j(z) dz.
  Spectrum acc = Spectrum::Zero(rows * rs);
  for (int j = 0; j < n - 1; ++j) {
    const Spectrum hj = grid->forward_rows(restrict_to_half(heat_apply(mirror_extend(g[j]), tau)));
    const Eigen::ArrayXd kj = kTwoPi * grid->row_derivative_frequency(j);
    for (Eigen::Index c = 0; c < rs; ++c) {
      std::complex<double> I = 0.0;
      for (int k = 1; k < rows; ++k) {
        const ExpLinear& e = weights[static_cast<std::size_t>(c)];
        I = e.E * I + e.w0 * hj[(k - 1) * rs + c] + e.w1 * hj[k * rs + c];
        acc[k * rs + c] += kj[c] * I;
      }
    }
  }

  std::vector<ScalarField> out;
  for (int i = 0; i < n; ++i) {
    ScalarField a = restrict_to_half(heat_apply(odd_extend(g[i]), tau));
    Spectrum b(rows * rs);
    for (int k = 0; k < rows; ++k)
      for (Eigen::Index c = 0; c < rs; ++c) {
        const Eigen::Index idx = k * rs + c;
        if (kappa[c] == 0.0) {
          b[idx] = 0.0;
        } else if (i < n - 1) {
          b[idx] = 2.0 * kTwoPi * grid->row_derivative_frequency(i)[c] / kappa[c] * acc[idx];
        } else {
          b[idx] = 2.0 * kI * acc[idx];
        }
      }
    a += grid->inverse_rows(b, Slab::Half);
    out.push_back(std::move(a));
  }
  return VectorField(std::move(out));
}

DualityReport verify_duality_estimate(std::span<const DualityCase> corpus, const DualityExponents& e) {
  validate(e);
  DualityReport rep;
  for (const auto& cs : corpus) {
    const TensorField& F = cs.fprime;
    const double rhs_space = lp_norm(F, e.p1);
    std::vector<double> amp(cs.profile.size());
    for (std::size_t k = 0; k < amp.size(); ++k) amp[k] = std::abs(cs.profile[k]) * rhs_space;
    const double rhs = cs.profile.size() < 2 ? 0.0 : weighted_bochner_norm(amp, cs.dt, {e.q1, e.alpha1});
    if (!(rhs > 0.0)) {
      rep.ratios.push_back(std::numeric_limits<double>::quiet_NaN());
      ++rep.skipped;
      continue;
    }
    const GridSpec& spec = F.spec();
    const int n = spec.n;
    auto bank = build_filter_bank(spec);
    const SpectralGrid& g = bank->grid();

    // Tangential gradient of every entry at unit temporal amplitude.
    std::vector<Spectrum> base;
    for (const auto& entry : F.entries()) {
      const Spectrum s = g.forward(zero_extend(entry));
      for (int b = 0; b < n - 1; ++b) base.push_back(kTwoPi * kI * g.derivative_frequency(b) * s);
    }
    if (e.p == 2.0) {
      // Parseval: only the pointwise modulus over components matters.
      Eigen::ArrayXd m2 = Eigen::ArrayXd::Zero(g.spectrum_size());
      for (const auto& s : base) m2 += s.abs2();
      base.assign(1, m2.sqrt().cast<std::complex<double>>());
    }

    // Per-mode Duhamel amplitude B(t) = int_0^t a(s) e^{-lambda (t - s)} ds.
    const Eigen::ArrayXd lambda = 4.0 * std::numbers::pi * std::numbers::pi * g.modulus_squared();
    Eigen::ArrayXd E(lambda.size()), w0(lambda.size()), w1(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
      const ExpLinear x = exp_linear(lambda[i], cs.dt);
      E[i] = x.E, w0[i] = x.w0, w1[i] = x.w1;
    }
    Eigen::ArrayXd B = Eigen::ArrayXd::Zero(lambda.size());
    const BesovIndex idx{-2.0 * e.alpha, e.p, e.q};
    std::vector<double> lhs_norms{0.0};
    std::vector<Spectrum> now(base.size());
    for (std::size_t k = 0; k + 1 < cs.profile.size(); ++k) {
      B = E * B + w0 * cs.profile[k] + w1 * cs.profile[k + 1];
      for (std::size_t c = 0; c < base.size(); ++c) now[c] = base[c] * B;
      lhs_norms.push_back(besov_norm(now, idx, *bank));
    }
    const double lhs = weighted_bochner_norm(lhs_norms, cs.dt, {e.q, 0.0});
    const double r = lhs / rhs;
    rep.ratios.push_back(r);
    rep.max_ratio = std::max(rep.max_ratio, r);
  }
  return rep;
}

}  // namespace sns
