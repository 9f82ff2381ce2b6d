#include <cmath>
#include <numbers>
#include <random>

#include "sns/calculus.hpp"
#include "sns/heat.hpp"
#include "sns/helmholtz.hpp"
#include "sns/hls.hpp"
#include "sns/littlewood_paley.hpp"
#include "sns/potential.hpp"
#include "sns/random_fields.hpp"
#include "sns/stokes.hpp"
#include "sns/suites.hpp"
#include "suite_support.hpp"

namespace sns {

using detail::max_abs;
using detail::relative_l2;
using detail::suite_rng;

Report lp_partition_suite(const SuiteConfig& cfg) {
  Report r;
  r.suite = "lp-partition";
  const auto bank = build_filter_bank(cfg.grid);
  r.at_most("partition", "max_residual", bank->partition_residual(), 1e-12);
  double telescoped = 0.0;
  for (int j = -20; j <= 20; ++j) telescoped += phi_hat(std::ldexp(1.3, -j));
  r.at_most("partition", "sum_at_1.3", std::abs(telescoped - 1.0), 1e-12);
  r.check("profile", "psi_hat(0.5)_is_1", psi_hat(0.5) == 1.0);
  r.check("profile", "psi_hat(3)_is_0", psi_hat(3.0) == 0.0);

  auto rng = suite_rng(cfg.seed, "lp-partition");
  const ScalarField f = draw_band_modes(rng, cfg.grid, bank->j_min() + 1, bank->j_max() - 2).sample(cfg.grid);
  ScalarField sum(cfg.grid, Slab::Full);
  std::vector<ScalarField> bands;
  for (int j = bank->j_min(); j <= bank->j_max(); ++j) {
    bands.push_back(lp_project(f, j, *bank));
    sum += bands.back();
  }
  ScalarField centred = f;
  centred.values() -= f.values().mean();
  r.at_most("reconstruction", "relative_l2", relative_l2(sum, centred), 1e-10);
  const double scale = std::sqrt(f.values().square().sum());
  double cross = 0.0;
  for (std::size_t a = 0; a + 2 < bands.size(); ++a) {
    const ScalarField twice = lp_project(bands[a], bank->j_min() + static_cast<int>(a) + 2, *bank);
    cross = std::max(cross, std::sqrt(twice.values().square().sum()) / scale);
  }
  r.at_most("almost-orthogonality", "max_relative_l2", cross, 1e-12);
  r.details["j_min"] = bank->j_min();
  r.details["j_max"] = bank->j_max();
  return r;
}

Report heat_decay_suite(const SuiteConfig& cfg) {
  Report r;
  r.suite = "heat-decay";
  const auto bank = build_filter_bank(cfg.grid);
  auto rng = suite_rng(cfg.seed, "heat-decay");
  const ScalarField f = draw_band_modes(rng, cfg.grid, -2, 2).sample(cfg.grid);
  std::vector<BandTimePoint> points;
  const double xs[] = {0.0, 0.02, 0.05, 0.1, 0.2, 0.4, 0.7, 1.0};
  for (int j = -2; j <= 2; ++j)
    for (double x : xs) points.push_back({j, x * std::ldexp(1.0, -2 * j)});
  const BandDecayReport rep = verify_band_decay(f, points, 2.0, *bank);
  std::size_t used = 0;
  nlohmann::json table = nlohmann::json::array();
  for (const auto& e : rep.entries) {
    if (!e.skipped) ++used;
    table.push_back({{"j", e.j}, {"t", e.t}, {"ratio", e.ratio}, {"skipped", e.skipped}});
  }
  const double c_max = 16.0 * std::numbers::pi * std::numbers::pi;
  r.at_least("band-decay", "table_points", static_cast<double>(used), 40.0);
  r.add("band-decay", "fitted_rate_c", rep.c, c_max, rep.c > 0 && rep.c <= c_max);
  r.at_most("band-decay", "fitted_prefactor_C", rep.C, 10.0);
  r.check("band-decay", "bound_holds_on_table", rep.bound_holds);
  r.details["table"] = table;

  // One mode with integer wave numbers (5, 3): |xi|^2 = 34 / (2 pi)^2 on the default geometry.
  TorusModes single;
  single.n = cfg.grid.n;
  TorusModes::Mode m;
  m.k = {5, 3, 0};
  if (cfg.grid.n == 3) m.k = {5, 0, 3};
  m.a = 1.0;
  m.b = 0.5;
  single.modes.push_back(m);
  const double xi2 = std::pow(5.0 / (2.0 * cfg.grid.L), 2) + std::pow(3.0 / (2.0 * cfg.grid.H), 2);
  const double rate = 4.0 * std::numbers::pi * std::numbers::pi * xi2;
  std::vector<BandTimePoint> sp;
  for (int j = bank->j_min(); j <= bank->j_max(); ++j)
    for (double t : {0.0, 0.01, 0.05, 0.2}) sp.push_back({j, t});
  const BandDecayReport srep = verify_band_decay(single.sample(cfg.grid), sp, 2.0, *bank);
  double err = 0.0, squares = 0.0;
  for (const auto& e : srep.entries) {
    if (e.skipped) continue;
    err = std::max(err, std::abs(e.ratio / std::exp(-rate * e.t) - 1.0));
  }
  for (const auto& a : srep.entries) {
    if (a.skipped || a.t != 0.05) continue;
    const BandTimePoint twice{a.j, 0.1};
    const BandDecayReport d = verify_band_decay(single.sample(cfg.grid), std::span(&twice, 1), 2.0, *bank);
    squares = std::max(squares, std::abs(d.entries[0].ratio / (a.ratio * a.ratio) - 1.0));
  }
  r.at_most("single-mode", "max_relative_error", err, 1e-10);
  r.at_most("single-mode", "doubling_squares_ratio", squares, 1e-10);
  return r;
}

Report heat_smoothing_suite(const SuiteConfig& cfg) {
  Report r;
  r.suite = "heat-smoothing";
  auto rng = suite_rng(cfg.seed, "heat-smoothing");
  std::vector<TorusModes> modes;
  for (int i = 0; i < cfg.corpus; ++i) modes.push_back(draw_band_modes(rng, cfg.grid, -2, 2, 3));
  const auto sample_all = [&](const GridSpec& g) {
    std::vector<ScalarField> out;
    for (const auto& m : modes) out.push_back(m.sample(g));
    return out;
  };
  const std::vector<ScalarField> coarse = sample_all(cfg.grid);
  const auto bank = build_filter_bank(cfg.grid);

  // Besov-valued smoothing for several time exponents q at beta = 0.
  const double qs[] = {2.0, 4.0, 8.0, std::numeric_limits<double>::infinity()};
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  nlohmann::json per_q = nlohmann::json::array();
  for (double q : qs) {
    SmoothingConfig sc;
    sc.p = 2.0;
    sc.q = q;
    const SmoothingReport rep = verify_smoothing(coarse, sc, *bank);
    bool finite = rep.skipped == 0;
    for (double x : rep.ratios) finite = finite && std::isfinite(x);
    const std::string name = std::isinf(q) ? "inf" : std::to_string(static_cast<int>(q));
    r.check("q-uniformity", "all_ratios_finite_q" + name, finite);
    r.finite("q-uniformity", "max_ratio_q" + name, rep.max_ratio);
    r.at_most("q-uniformity", "relative_tail_q" + name, rep.max_relative_tail, 1e-8);
    lo = std::min(lo, rep.max_ratio);
    hi = std::max(hi, rep.max_ratio);
    per_q.push_back({{"q", name}, {"max_ratio", rep.max_ratio}, {"horizon", rep.horizon}});
  }
  r.at_most("q-uniformity", "max_over_min_constant", hi / lo, 10.0);
  r.details["q_uniformity"] = per_q;

  // Weighted L^p smoothing on two resolutions.
  const GridSpec fine_grid = cfg.grid.refined(2);
  const std::vector<ScalarField> fine = sample_all(fine_grid);
  const auto fine_bank = build_filter_bank(fine_grid);
  nlohmann::json weighted = nlohmann::json::array();
  for (double p : {2.0, 4.0}) {
    SmoothingConfig sc;
    sc.weighted = true;
    sc.p = p;
    sc.q = 4.0;
    sc.alpha = 0.125;
    const SmoothingReport a = verify_smoothing(coarse, sc, *bank);
    const SmoothingReport b = verify_smoothing(fine, sc, *fine_bank);
    const std::string name = "p" + std::to_string(static_cast<int>(p)) + "_q4_alpha0.125";
    r.finite("weighted-smoothing", "max_ratio_" + name, a.max_ratio);
    r.stable("weighted-smoothing", "refinement_change_" + name, a.max_ratio, b.max_ratio, 0.15);
    weighted.push_back({{"p", p}, {"coarse", a.max_ratio}, {"fine", b.max_ratio}});
  }
  r.details["weighted"] = weighted;
  return r;
}

Report hls_suite(const SuiteConfig& cfg) {
  Report r;
  r.suite = "hls";
  const double lambda = 0.5;
  {
    const double dt = 1e-3;
    const std::vector<double> ones(1001, 1.0);
    const auto out = fractional_integral(ones, dt, lambda);
    double err = 0.0;
    for (std::size_t k = 1; k < out.size(); ++k) {
      const double t = static_cast<double>(k) * dt;
      const double exact = std::pow(t, 1.0 - lambda) / (1.0 - lambda);
      err = std::max(err, std::abs(out[k] / exact - 1.0));
    }
    r.at_most("closed-form", "constant_input_max_relative_error", err, 1e-6);
  }
  {
    const double dt = 1e-4, a = 0.3;
    std::vector<double> f(10001);
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = std::pow(static_cast<double>(k) * dt, a);
    const auto out = fractional_integral(f, dt, lambda);
    const double beta = std::beta(a + 1.0, 1.0 - lambda);
    double err = 0.0;
    for (std::size_t k = 1000; k < out.size(); k += 500) {
      const double t = static_cast<double>(k) * dt;
      err = std::max(err, std::abs(out[k] / (beta * std::pow(t, a + 1.0 - lambda)) - 1.0));
    }
    r.at_most("beta-oracle", "power_input_max_relative_error", err, 1e-4);
  }
  {
    const HlsExponents e{0.5, 2.0, 4.0, 0.25, 0.0};
    auto rng = suite_rng(cfg.seed, "hls");
    std::normal_distribution<double> level(0.0, 1.0);
    std::uniform_real_distribution<double> cut(0.0, 1.0);
    double coarse = 0.0, fine = 0.0;
    for (int c = 0; c < cfg.corpus; ++c) {
      std::vector<double> edges{0.0, 1.0}, values;
      for (int s = 0; s < 9; ++s) edges.push_back(cut(rng));
      std::sort(edges.begin(), edges.end());
      for (std::size_t s = 0; s + 1 < edges.size(); ++s) values.push_back(level(rng));
      const auto sampled = [&](double dt) {
        const int count = static_cast<int>(std::lround(1.0 / dt)) + 1;
        std::vector<double> f(static_cast<std::size_t>(count));
        for (int k = 0; k < count; ++k) {
          const double t = k * dt;
          std::size_t s = 0;
          while (s + 2 < edges.size() && t >= edges[s + 1]) ++s;
          f[static_cast<std::size_t>(k)] = values[s];
        }
        return f;
      };
      coarse = std::max(coarse, hls_operator(sampled(1e-3), 1e-3, e).ratio);
      fine = std::max(fine, hls_operator(sampled(5e-4), 5e-4, e).ratio);
    }
    r.finite("compliant-tuple", "max_ratio", coarse);
    r.stable("compliant-tuple", "refinement_change", coarse, fine, 0.10);
  }
  {
    bool rejected = false;
    try {
      validate(HlsExponents{0.5, 2.0, 4.0, 0.3, 0.0});
    } catch (const ConfigurationError&) {
      rejected = true;
    }
    r.check("validator", "non_compliant_tuple_rejected", rejected);
  }
  return r;
}

ScalarField direct_newtonian_hessian(const ScalarField& half, int i, int j, bool reflected, int images) {
  const GridSpec& s = half.spec();
  if (s.n != 2) throw DomainError("direct Newtonian quadrature is implemented for n = 2");
  if (half.slab() != Slab::Half) throw StructuralError("direct quadrature expects a half-slab field");
  const int rows = half.rows(), cols = half.row_length();
  const double ht = s.h_tangential(), hn = s.h_normal();
  const Eigen::ArrayXd w = quadrature_weights(s, Slab::Half);
  const NewtonianKernel N{2};
  // Mean of N over one cell, for the coincident node.
  double cell = 0.0;
  const int sub = 64;
  for (int a = 0; a < sub; ++a)
    for (int b = 0; b < sub; ++b)
      cell += N({(a + 0.5) / sub * ht - 0.5 * ht, (b + 0.5) / sub * hn - 0.5 * hn, 0.0});
  cell /= sub * sub;

  Eigen::ArrayXd pot = Eigen::ArrayXd::Zero(half.size());
  for (Eigen::Index x = 0; x < half.size(); ++x) {
    const Point px = s.point(Slab::Half, static_cast<std::size_t>(x));
    double acc = 0.0;
    for (Eigen::Index y = 0; y < half.size(); ++y) {
      const double fy = half.values()[y];
      if (fy == 0.0) continue;
      Point py = s.point(Slab::Half, static_cast<std::size_t>(y));
      if (reflected) py[1] = -py[1];
      const Point d{px[0] - py[0], px[1] - py[1], 0.0};
      acc += w[y] * fy * ((d[0] == 0.0 && d[1] == 0.0) ? cell : N(d));
    }
    pot[x] = acc;
  }
  const auto at = [&](int r, int c) { return pot[static_cast<Eigen::Index>(r) * cols + c]; };
  const double h[2] = {ht, hn};
  const auto d1 = [&](int r, int c, int axis) {
    const int dr = axis == 1, dc = axis == 0;
    return (at(r - 2 * dr, c - 2 * dc) - 8 * at(r - dr, c - dc) + 8 * at(r + dr, c + dc) - at(r + 2 * dr, c + 2 * dc)) /
           (12.0 * h[axis]);
  };
  ScalarField out(s, Slab::Half);
  for (int r = 2; r < rows - 2; ++r)
    for (int c = 2; c < cols - 2; ++c) {
      double v;
      if (i == j) {
        const int dr = i == 1, dc = i == 0;
        v = (-at(r - 2 * dr, c - 2 * dc) + 16 * at(r - dr, c - dc) - 30 * at(r, c) + 16 * at(r + dr, c + dc) -
             at(r + 2 * dr, c + 2 * dc)) /
            (12.0 * h[i] * h[i]);
      } else {
        // mixed derivative: first-derivative stencil in x_n of d_1 P
        v = 0.0;
        const int offs[4] = {-2, -1, 1, 2};
        const double wts[4] = {1.0, -8.0, 8.0, -1.0};
        for (int k = 0; k < 4; ++k) v += wts[k] * d1(r + offs[k], c, 0);
        v /= 12.0 * hn;
      }
      out.values()[static_cast<Eigen::Index>(r) * cols + c] = v;
    }
  if (images == 0) return out;
  // Translates by (2L a, 2H b): smooth there, so the kernel Hessian
  // (delta_ij r^2 - 2 d_i d_j) / (2 pi r^4) is summed directly.
  for (int r = 2; r < rows - 2; ++r)
    for (int c = 2; c < cols - 2; ++c) {
      const Eigen::Index x = static_cast<Eigen::Index>(r) * cols + c;
      const Point px = s.point(Slab::Half, static_cast<std::size_t>(x));
      double acc = 0.0;
      for (Eigen::Index y = 0; y < half.size(); ++y) {
        const double fy = half.values()[y];
        if (fy == 0.0) continue;
        Point py = s.point(Slab::Half, static_cast<std::size_t>(y));
        if (reflected) py[1] = -py[1];
        for (int a = -images; a <= images; ++a)
          for (int b = -images; b <= images; ++b) {
            if (a == 0 && b == 0) continue;
            const double d[2] = {px[0] - py[0] - 2.0 * s.L * a, px[1] - py[1] - 2.0 * s.H * b};
            const double r2 = d[0] * d[0] + d[1] * d[1];
            acc += w[y] * fy * ((i == j ? r2 : 0.0) - 2.0 * d[i] * d[j]) / (2.0 * std::numbers::pi * r2 * r2);
          }
      }
      out.values()[x] += acc;
    }
  return out;
}

namespace {

// Comparison mask: nodes where the direct stencil is defined.
double masked_relative_l2(const ScalarField& a, const ScalarField& oracle) {
  const int rows = a.rows(), cols = a.row_length();
  double num = 0.0, den = 0.0;
  for (int r = 4; r < rows - 4; ++r)
    for (int c = 4; c < cols - 4; ++c) {
      const Eigen::Index k = static_cast<Eigen::Index>(r) * cols + c;
      num += std::pow(a.values()[k] - oracle.values()[k], 2);
      den += std::pow(oracle.values()[k], 2);
    }
  return den > 0 ? std::sqrt(num / den) : 0.0;
}

}  // namespace

Report potential_suite(const SuiteConfig& cfg) {
  Report r;
  r.suite = "potential";
  auto rng = suite_rng(cfg.seed, "potential");
  const int n = cfg.grid.n;
  const ScalarField f = sample(draw_bumps(rng, cfg.grid), cfg.grid);
  {
    double asym = 0.0, scale = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (Extension e : {Extension::Zero, Extension::Mirror}) {
          const ScalarField a = newtonian_hessian(f, i, j, e), b = newtonian_hessian(f, j, i, e);
          asym = std::max(asym, (a.values() - b.values()).abs().maxCoeff());
          scale = std::max(scale, a.values().abs().maxCoeff());
        }
    r.at_most("multiplier-symmetry", "max_relative_asymmetry", asym / scale, 1e-12);
  }
  {
    ScalarField trace(cfg.grid, Slab::Half);
    for (int i = 0; i < n; ++i) trace += newtonian_hessian(f, i, i, Extension::Zero);
    const ScalarField ext = zero_extend(f);
    ScalarField centred = f;
    centred.values() -= ext.values().mean();
    r.at_most("trace-identity", "relative_l2", relative_l2(trace, centred), 1e-10);
  }
  {
    const double c = hessian_l2_constant(*SpectralGrid::of(cfg.grid));
    r.at_most("l2-constant", "max_multiplier_modulus", c, 1.0);
    // single mode: the L2 gain equals |k_i k_j| / |k|^2 exactly
    TorusModes one;
    one.n = n;
    TorusModes::Mode m;
    m.k = {3, 4, 0};
    if (n == 3) m.k = {3, 0, 4};
    m.a = 1.0;
    one.modes.push_back(m);
    const ScalarField full = one.sample(cfg.grid);
    const auto g = SpectralGrid::of(cfg.grid);
    const Spectrum s = g->forward(full);
    const ScalarField out = g->inverse(s * hessian_multiplier(*g, 0, n - 1));
    const double k0 = 3.0 / (2.0 * cfg.grid.L), kn = 4.0 / (2.0 * cfg.grid.H);
    const double expected = std::abs(k0 * kn) / (k0 * k0 + kn * kn);
    const double gain = std::sqrt(out.values().square().sum() / full.values().square().sum());
    r.at_most("l2-constant", "single_mode_gain_error", std::abs(gain - expected), 1e-12);
    r.at_most("l2-constant", "single_mode_gain", gain, 1.0);
  }
  {
    // s inside (-1 + 1/p, 0) and inside the zero-extension range (-1/p, 1 - 1/p)
    const BesovIndex idx{-0.25, 2.0, 2.0};
    std::vector<BumpSum> corpus;
    for (int c = 0; c < cfg.corpus; ++c) corpus.push_back(draw_bumps(rng, cfg.grid));
    const GridSpec fine = cfg.grid.refined(2);
    const auto bc = build_filter_bank(cfg.grid), bf = build_filter_bank(fine);
    for (bool reflected : {false, true}) {
      double a = 0.0, b = 0.0;
      bool reliable = true;
      for (const auto& bump : corpus) {
        const TraceEstimate ea = trace_estimate_check(sample(bump, cfg.grid), idx, reflected, *bc);
        const TraceEstimate eb = trace_estimate_check(sample(bump, fine), idx, reflected, *bf);
        a = std::max(a, ea.ratio);
        b = std::max(b, eb.ratio);
        reliable = reliable && ea.reliable && eb.reliable;
      }
      const std::string name = reflected ? "reflected" : "direct";
      r.finite("besov-ratio", "max_ratio_" + name, a);
      r.stable("besov-ratio", "refinement_change_" + name, a, b, 0.10);
      r.check("besov-ratio", "surrogate_reliable_" + name, reliable);
    }
  }
  {
    GridSpec small = cfg.grid;
    small.n = 2;
    small.m_tangential = small.m_normal = 32;
    BumpSum pair;
    pair.n = 2;
    pair.bumps.push_back({{-0.4, 0.5 * small.H, 0.0}, 0.35, 1.0});
    // zero net mass: the doubled-torus operator drops the mean mode
    pair.bumps.push_back({{0.6, 0.55 * small.H, 0.0}, 0.35, -1.0});
    const ScalarField g = sample(pair, small);
    double worst = 0.0;
    nlohmann::json entries = nlohmann::json::array();
    for (bool reflected : {false, true})
      for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j) {
          const ScalarField oracle = direct_newtonian_hessian(g, i, j, reflected, 4);
          const ScalarField fast = newtonian_hessian(g, i, j, reflected ? Extension::Mirror : Extension::Zero);
          const double e = masked_relative_l2(fast, oracle);
          worst = std::max(worst, e);
          const double free_space = masked_relative_l2(fast, direct_newtonian_hessian(g, i, j, reflected, 0));
          entries.push_back(
              {{"i", i}, {"j", j}, {"reflected", reflected}, {"relative_l2", e}, {"free_space_relative_l2", free_space}});
        }
    r.at_most("direct-quadrature", "max_relative_l2_32", worst, 0.02);
    r.details["direct_quadrature"] = entries;
  }
  return r;
}

namespace {

TensorField hessian_tensor(const BumpSum& potential, const GridSpec& g) {
  const ScalarField pf = zero_extend(sample(potential, g));
  TensorField F(g, Slab::Half, true);
  for (int a = 0; a < g.n; ++a)
    for (int b = a; b < g.n; ++b) {
      ScalarField e = restrict_to_half(spectral_partial(spectral_partial(pf, a), b));
      e.row(0).setZero();
      F(a, b) = e;
      F(b, a) = e;
    }
  return F;
}

double gradient_leak(const BumpSum& potential, const GridSpec& g) {
  const TensorField F = hessian_tensor(potential, g);
  return lp_norm(helmholtz_apply(F), 2.0) / lp_norm(divergence(F), 2.0);
}

double interior_divergence(const VectorField& v) {
  return detail::band_l2(divergence(v), 1.0 / 3.0, 2.0 / 3.0) / detail::band_l2(v, 1.0 / 3.0, 2.0 / 3.0);
}

TensorField combine(double a, const TensorField& F, double b, const TensorField& G) {
  TensorField out(F.spec(), F.slab(), F.symmetric());
  for (int k = 0; k < F.dim(); ++k)
    for (int l = 0; l < F.dim(); ++l) out(k, l) = a * F(k, l) + b * G(k, l);
  return out;
}

}  // namespace

Report helmholtz_suite(const SuiteConfig& cfg) {
  Report r;
  r.suite = "helmholtz";
  auto rng = suite_rng(cfg.seed, "helmholtz");
  const int n = cfg.grid.n;
  const TensorBumps fb = draw_tensor(rng, cfg.grid), gb = draw_tensor(rng, cfg.grid);
  const TensorField F = fb.sample(cfg.grid), G = gb.sample(cfg.grid);
  const TensorField PF = project_tensor(F).fprime, PG = project_tensor(G).fprime;
  {
    const TensorField PC = project_tensor(combine(2.0, F, -3.0, G)).fprime;
    double err = 0.0, scale = 0.0;
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        err = std::max(err, (PC(k, l).values() - 2.0 * PF(k, l).values() + 3.0 * PG(k, l).values()).abs().maxCoeff());
        scale = std::max(scale, PC(k, l).values().abs().maxCoeff());
      }
    r.at_most("linearity", "max_relative_error", err / scale, 1e-10);
  }
  {
    double err = 0.0;
    for (int m = 0; m < n; ++m) {
      Eigen::ArrayXd expected = F(n - 1, m).values();
      if (m == n - 1) expected -= F(n - 1, n - 1).values();
      err = std::max(err, (PF(n - 1, m).values() - expected).abs().maxCoeff());
    }
    r.at_most("first-group", "max_abs_error", err, 0.0);
  }
  {
    BumpSum pi;
    pi.n = n;
    Point c1{}, c2{};
    c1[0] = 0.3;
    c2[0] = -0.5;
    c1[static_cast<std::size_t>(n - 1)] = 0.5 * cfg.grid.H;
    c2[static_cast<std::size_t>(n - 1)] = 0.54 * cfg.grid.H;
    pi.bumps.push_back({c1, 0.2, 1.0});
    pi.bumps.push_back({c2, 0.2, -0.6});
    const double a = gradient_leak(pi, cfg.grid), b = gradient_leak(pi, cfg.grid.refined(2));
    r.at_most("gradient-annihilation", "ratio_coarse", a, 0.05);
    r.add("gradient-annihilation", "ratio_fine_over_coarse", b / a, 1.0, b < a);
  }
  {
    const double a = interior_divergence(helmholtz_apply(F));
    const double b = interior_divergence(helmholtz_apply(fb.sample(cfg.grid.refined(2))));
    r.finite("interior-solenoidality", "relative_divergence_coarse", a);
    r.add("interior-solenoidality", "fine_over_coarse", b / a, 1.0, b < a);
  }
  {
    std::vector<TensorBumps> corpus;
    for (int c = 0; c < cfg.corpus; ++c) corpus.push_back(draw_tensor(rng, cfg.grid));
    const auto bound = [&](const GridSpec& g) {
      std::vector<TensorField> fields;
      for (const auto& t : corpus) fields.push_back(t.sample(g));
      return verify_projection_bound(fields, 2.0).max_ratio;
    };
    const double a = bound(cfg.grid), b = bound(cfg.grid.refined(2));
    r.finite("projection-bound", "max_ratio", a);
    r.stable("projection-bound", "refinement_change", a, b, 0.10);
  }
  return r;
}

Report stokes_linear_suite(const SuiteConfig& cfg) {
  Report r;
  r.suite = "stokes-linear";
  auto rng = suite_rng(cfg.seed, "stokes-linear");
  const GridSpec coarse = cfg.grid, fine = cfg.grid.refined(2);
  const int steps = coarse.steps();
  const double dt = coarse.dt;
  const SolenoidalField u0 = draw_solenoidal(rng, coarse);

  double boundary = 0.0, div_c = 0.0, div_f = 0.0;
  {
    const VectorSeries v = stokes_from_initial(u0.sample(coarse), steps, dt);
    for (std::size_t k = 1; k < v.size(); ++k) {
      double wall = 0.0;
      for (const auto& c : v[k].components()) wall = std::max(wall, c.row(0).abs().maxCoeff());
      boundary = std::max(boundary, wall / max_abs(v[k]));
    }
    for (std::size_t k = 25; k < v.size(); k += 25) div_c = std::max(div_c, interior_divergence(v[k]));
    const VectorSeries vf = stokes_from_initial(u0.sample(fine), steps, dt);
    for (std::size_t k = 25; k < vf.size(); k += 25) div_f = std::max(div_f, interior_divergence(vf[k]));
  }
  r.at_most("boundary", "max_wall_over_sup", boundary, 1e-3);
  r.at_most("solenoidality", "interior_relative_divergence", div_c, 1e-2);
  r.add("solenoidality", "fine_over_coarse", div_f / div_c, 1.0, div_f < div_c);

  {
    GridSpec small = coarse;
    small.m_tangential = small.m_normal = 32;
    small.dt = 5e-3;
    BumpOptions wide;
    wide.sigma_fraction = 1.0 / 8.0;
    const TensorField F = draw_tensor(rng, small, wide).sample(small);
    const int k = 16;
    const VectorSeries V = stokes_from_forcing(
        [&](int i) { return i == 0 ? F : TensorField(small, Slab::Half, true); }, k, small.dt);
    const VectorField direct = -small.dt * apply_stokes_kernel(helmholtz_apply(F), k * small.dt, 0.0);
    r.at_most("kernel-agreement", "relative_l2_32", relative_l2(V[static_cast<std::size_t>(k)], direct), 0.05);
  }

  {
    // Solution norm over data norm for initial values and for forcing.
    const SolutionExponents& e = cfg.solution;
    const BesovIndex data_idx{-2.0 * e.alpha - 2.0 / e.q, e.p, e.q};
    const ForcingExponents fe{e.p / 2.0, e.q / 2.0, 2.0 * e.alpha};
    std::vector<SolenoidalField> inits;
    std::vector<TensorBumps> forces;
    for (int c = 0; c < 4; ++c) inits.push_back(draw_solenoidal(rng, coarse));
    for (int c = 0; c < 2; ++c) forces.push_back(draw_tensor(rng, coarse));
    const auto ratios = [&](const GridSpec& g) {
      const auto bank = build_filter_bank(g);
      double init = 0.0, force = 0.0;
      for (const auto& s : inits) {
        const VectorField d = s.sample(g);
        const double num = weighted_bochner_norm(lp_norms(stokes_from_initial(d, steps, dt), e.p), dt, {e.q, e.alpha});
        init = std::max(init, num / besov_norm_halfspace(d, data_idx, *bank).value);
      }
      for (const auto& t : forces) {
        const TensorField F = t.sample(g);
        const VectorSeries V = stokes_from_forcing([&](int) { return F; }, steps, dt);
        const double num = weighted_bochner_norm(lp_norms(V, e.p), dt, {e.q, e.alpha});
        const std::vector<double> fn(static_cast<std::size_t>(steps) + 1, lp_norm(F, fe.p1));
        force = std::max(force, num / weighted_bochner_norm(fn, dt, {fe.q1, fe.alpha1}));
      }
      return std::pair{init, force};
    };
    const auto [ic, fc] = ratios(coarse);
    const auto [iff, ff] = ratios(fine);
    r.finite("solution-bound", "initial_ratio", ic);
    r.stable("solution-bound", "initial_refinement_change", ic, iff, 0.15);
    r.finite("solution-bound", "forcing_ratio", fc);
    r.stable("solution-bound", "forcing_refinement_change", fc, ff, 0.15);
    r.details["initial_data_surrogate_reliable"] = zero_extension_reliable(data_idx);
  }
  return r;
}

}  // namespace sns
