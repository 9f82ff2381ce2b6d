#include "sns/heat.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <numeric>
#include <numbers>

namespace sns {

namespace {

constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;

double band_norm(const Spectrum& s, const Eigen::ArrayXd& w, double p, const SpectralGrid& g) {
  if (p == 2.0) {
    const double N = g.full_points();
    return std::sqrt(g.torus_volume() / (N * N) * (g.hermitian_weight() * w.square() * s.abs2()).sum());
  }
  return lp_norm(g.inverse(s * w), p);
}

}  // namespace

Eigen::ArrayXd heat_multiplier(const SpectralGrid& g, double t) {
  if (!(t >= 0.0)) throw DomainError("heat time must be non-negative");
  return (-kFourPiSq * t * g.modulus_squared()).exp();
}

ModulusGroups group_by_modulus(const SpectralGrid& g) {
  const Eigen::ArrayXd& m2 = g.modulus_squared();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m2.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return m2[a] < m2[b]; });
  ModulusGroups out;
  out.group.resize(m2.size());
  std::vector<double> lam;
  double last = -1.0;
  for (const Eigen::Index i : order) {
    if (m2[i] != last) {
      lam.push_back(kFourPiSq * m2[i]);
      last = m2[i];
    }
    out.group[i] = static_cast<int>(lam.size()) - 1;
  }
  out.lambda = Eigen::Map<const Eigen::ArrayXd>(lam.data(), static_cast<Eigen::Index>(lam.size()));
  return out;
}

Eigen::ArrayXd ModulusGroups::expand(const Eigen::ArrayXd& per_group) const {
  Eigen::ArrayXd out(group.size());
  for (Eigen::Index i = 0; i < group.size(); ++i) out[i] = per_group[group[i]];
  return out;
}

ScalarField heat_apply(const ScalarField& f, double t, bool reflected) {
  if (!(t >= 0.0)) throw DomainError("heat time must be non-negative");
  ScalarField src = f.slab() == Slab::Half ? (reflected ? mirror_extend(f) : zero_extend(f))
                                           : (reflected ? flip_normal(f) : f);
  if (t == 0.0) return src;
  auto g = SpectralGrid::of(f.spec());
  Spectrum s = g->forward(src);
  s *= heat_multiplier(*g, t);
  return g->inverse(s);
}

VectorField heat_apply(const VectorField& f, double t, bool reflected) {
  std::vector<ScalarField> c;
  for (int i = 0; i < f.dim(); ++i) c.push_back(heat_apply(f[i], t, reflected));
  return VectorField(std::move(c));
}

BandDecayReport verify_band_decay(const ScalarField& full, std::span<const BandTimePoint> points, double p,
                                  const DyadicFilterBank& bank) {
  if (full.slab() != Slab::Full) throw StructuralError("band decay acts on doubled-torus fields");
  const SpectralGrid& g = bank.grid();
  const Spectrum s = g.forward(full);
  BandDecayReport rep;
  for (const auto& pt : points) {
    BandDecayEntry e{pt.j, pt.t, 0.0, false};
    const Eigen::ArrayXd& w = bank.weights(pt.j);
    const double base = band_norm(s, w, p, g);
    if (!(base > 1e-14 * std::sqrt((s.abs2()).sum()))) {
      e.skipped = true;
    } else {
      e.ratio = band_norm(s, w * heat_multiplier(g, pt.t), p, g) / base;
    }
    rep.entries.push_back(e);
  }
  // r is a mixture of decaying exponentials in x = t 4^j, so a log-linear
  // least-squares slope overshoots the slowest rate. Take the envelope
  // rate c = min over x > 0 of -log(r) / x instead.
  rep.c = std::numeric_limits<double>::infinity();
  for (const auto& e : rep.entries) {
    const double x = e.t * std::ldexp(1.0, 2 * e.j);
    if (e.skipped || x <= 0) continue;
    rep.c = e.ratio > 0 ? std::min(rep.c, -std::log(e.ratio) / x) : rep.c;
  }
  if (!std::isfinite(rep.c)) rep.c = 0.0;
  rep.C = 0.0;
  for (const auto& e : rep.entries) {
    if (e.skipped) continue;
    rep.C = std::max(rep.C, e.ratio * std::exp(rep.c * e.t * std::ldexp(1.0, 2 * e.j)));
  }
  rep.bound_holds = rep.c > 0;
  for (const auto& e : rep.entries)
    if (!e.skipped && e.ratio > rep.C * std::exp(-rep.c * e.t * std::ldexp(1.0, 2 * e.j)) * (1 + 1e-12))
      rep.bound_holds = false;
  return rep;
}

namespace {

struct SmoothingTerms {
  double lhs = 0.0;       // q-th power (or sup for q = inf)
  double tail = 0.0;      // bound on the same quantity beyond the horizon
};

std::vector<double> time_grid(double horizon, double t_min, int count) {
  std::vector<double> t{0.0};
  const double r = std::pow(horizon / t_min, 1.0 / (count - 1));
  for (int k = 0; k < count; ++k) t.push_back(t_min * std::pow(r, k));
  t.back() = horizon;
  return t;
}

// l1 bound on the sup norm times vol^{1/p}.
double coefficient_bound(const Spectrum& s, const Eigen::ArrayXd& w, double p, const SpectralGrid& g) {
  const double sup = (g.hermitian_weight() * w * s.abs()).sum() / g.full_points();
  return std::isinf(p) ? sup : sup * std::pow(g.torus_volume(), 1.0 / p);
}

SmoothingTerms smoothing_terms(const Spectrum& s, const SmoothingConfig& cfg, const DyadicFilterBank& bank,
                               double horizon, double t_min) {
  const SpectralGrid& g = bank.grid();
  const auto times = time_grid(horizon, t_min, cfg.time_samples);
  const bool qinf = std::isinf(cfg.q);
  std::vector<double> X(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    const Spectrum sk = s * heat_multiplier(g, times[k]);
    if (cfg.weighted) {
      X[k] = band_norm(sk, Eigen::ArrayXd::Ones(g.spectrum_size()), cfg.p, g);
    } else {
      const auto bands = band_norms(std::span<const Spectrum>(&sk, 1), cfg.p, bank);
      X[k] = combine_bands(bands, bank.j_min(), {cfg.beta, cfg.p, cfg.q});
    }
  }
  SmoothingTerms out;
  const WeightedIndex w{cfg.q, cfg.weighted ? cfg.alpha : 0.0};
  const double norm = weighted_bochner_norm(times, X, w);
  out.lhs = qinf ? norm : std::pow(norm, cfg.q);

  const double lam_min = kFourPiSq * std::pow(g.min_nonzero_modulus(), 2);
  if (cfg.weighted) {
    const double A = coefficient_bound(s, Eigen::ArrayXd::Ones(g.spectrum_size()), cfg.p, g);
    if (qinf)
      out.tail = std::pow(horizon, cfg.alpha) * A * std::exp(-lam_min * horizon);
    else
      out.tail = 2.0 * std::pow(A, cfg.q) * std::pow(horizon, cfg.alpha * cfg.q) *
                 std::exp(-cfg.q * lam_min * horizon) / (cfg.q * lam_min);
    return out;
  }
  for (int j = bank.j_min(); j <= bank.j_max(); ++j) {
    const Eigen::ArrayXd& wj = bank.weights(j);
    const double lam = kFourPiSq * std::pow(std::max(g.min_nonzero_modulus(), std::ldexp(0.5, j)), 2);
    const double A = std::exp2(cfg.beta * j) * coefficient_bound(s, wj, cfg.p, g);
    if (qinf)
      out.tail = std::max(out.tail, A * std::exp(-lam * horizon));
    else
      out.tail += std::pow(A, cfg.q) * std::exp(-cfg.q * lam * horizon) / (cfg.q * lam);
  }
  return out;
}

}  // namespace

SmoothingReport verify_smoothing(std::span<const ScalarField> corpus, const SmoothingConfig& cfg,
                                 const DyadicFilterBank& bank) {
  if (cfg.weighted && !(cfg.alpha > 0)) throw DomainError("weighted smoothing needs alpha > 0");
  if (!(cfg.p >= 1) || !(cfg.q >= 1)) throw DomainError("exponents must be >= 1");
  if (cfg.time_samples < 8) throw DomainError("too few time samples");
  const SpectralGrid& g = bank.grid();
  const double lam_min = kFourPiSq * std::pow(g.min_nonzero_modulus(), 2);
  const double lam_max = kFourPiSq * std::pow(g.max_modulus(), 2);
  const double t_min = 1e-3 / lam_max;
  const BesovIndex rhs_idx = cfg.weighted
                                 ? BesovIndex{-2.0 * cfg.alpha - (std::isinf(cfg.q) ? 0.0 : 2.0 / cfg.q), cfg.p, cfg.q}
                                 : BesovIndex{cfg.beta - (std::isinf(cfg.q) ? 0.0 : 2.0 / cfg.q), cfg.p, cfg.q};
  SmoothingReport rep;
  rep.horizon = std::log(1e8) / lam_min;
  for (const auto& f : corpus) {
    if (f.slab() != Slab::Full) throw StructuralError("smoothing corpus must be doubled-torus fields");
    const Spectrum s = g.forward(f);
    const double rhs = besov_norm(std::span<const Spectrum>(&s, 1), rhs_idx, bank);
    if (rhs == 0.0) {
      rep.ratios.push_back(std::numeric_limits<double>::quiet_NaN());
      ++rep.skipped;
      continue;
    }
    double horizon = rep.horizon;
    SmoothingTerms terms = smoothing_terms(s, cfg, bank, horizon, t_min);
    for (int guard = 0; guard < 40 && terms.tail > cfg.tail_tolerance * terms.lhs; ++guard) {
      horizon *= 1.5;
      terms = smoothing_terms(s, cfg, bank, horizon, t_min);
    }
    rep.horizon = std::max(rep.horizon, horizon);
    rep.max_relative_tail = std::max(rep.max_relative_tail, terms.lhs > 0 ? terms.tail / terms.lhs : 0.0);
    const double lhs = std::isinf(cfg.q) ? terms.lhs : std::pow(terms.lhs, 1.0 / cfg.q);
    const double r = lhs / rhs;
    rep.ratios.push_back(r);
    rep.max_ratio = std::max(rep.max_ratio, r);
  }
  return rep;
}

}  // namespace sns
