#include "sns/nse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sns/calculus.hpp"
#include "sns/littlewood_paley.hpp"
#include "sns/stokes.hpp"

namespace sns {

ForcingExponents SolveConfig::forcing() const {
  return {solution.p / 2.0, solution.q / 2.0, 2.0 * solution.alpha};
}

void SolveConfig::validate() const {
  sns::validate(solution);
  sns::validate(solution, noise);
  sns::validate(solution, forcing());
  if (!(R > 0)) throw ConfigurationError("cutoff radius must be positive");
  if (!(delta > 0)) throw ConfigurationError("smallness parameter must be positive");
  if (!(epsilon > 0 && epsilon < 1)) throw ConfigurationError("epsilon must lie in (0, 1)");
  if (max_picard_iters < 1 || !(picard_tol > 0)) throw ConfigurationError("invalid Picard settings");
}

double cutoff_theta(double s, double R) {
  if (!(s >= 0) || !(R > 0)) throw DomainError("cutoff needs s >= 0 and R > 0");
  return std::min(1.0, std::max(0.0, 2.0 - s / R));
}

std::vector<double> running_norm(const VectorSeries& v, const SolutionExponents& e) {
  return running_bochner_norm(lp_norms(v, e.p), v.dt, {e.q, e.alpha});
}

double solution_norm(const VectorSeries& v, const SolutionExponents& e) {
  if (v.size() < 2) return 0.0;
  return weighted_bochner_norm(lp_norms(v, e.p), v.dt, {e.q, e.alpha});
}

std::vector<double> chi_of_path(const VectorSeries& v, const SolveConfig& cfg) {
  std::vector<double> chi = running_norm(v, cfg.solution);
  for (double& c : chi) c = cutoff_theta(c, cfg.R);
  return chi;
}

TensorField quadratic_tensor(const VectorField& v, double chi) {
  const int n = v.dim();
  TensorField F(v.spec(), Slab::Half, true);
  for (int k = 0; k < n; ++k)
    for (int l = k; l < n; ++l) {
      ScalarField e(v.spec(), Slab::Half, chi * v[k].values() * v[l].values());
      e.row(0).setZero();
      F(k, l) = e;
      F(l, k) = e;
    }
  return F;
}

namespace {

bool all_zero(const VectorSeries& v) {
  for (const auto& f : v.samples)
    for (const auto& c : f.components())
      if ((c.values() != 0.0).any()) return false;
  return true;
}

VectorSeries zeros_like(const VectorSeries& v) {
  VectorSeries out{v.dt, {}};
  for (const auto& f : v.samples) out.samples.push_back(VectorField(f.spec(), f.slab()));
  return out;
}

}  // namespace

VectorSeries add(const VectorSeries& a, const VectorSeries& b) {
  if (a.size() != b.size()) throw StructuralError("series lengths differ");
  VectorSeries out{a.dt, {}};
  for (std::size_t k = 0; k < a.size(); ++k) out.samples.push_back(a[k] + b[k]);
  return out;
}

VectorSeries subtract(const VectorSeries& a, const VectorSeries& b) {
  if (a.size() != b.size()) throw StructuralError("series lengths differ");
  VectorSeries out{a.dt, {}};
  for (std::size_t k = 0; k < a.size(); ++k) out.samples.push_back(a[k] - b[k]);
  return out;
}

VectorSeries nonlinear_term(const VectorSeries& v, const SolveConfig& cfg) {
  if (v.size() == 0) return v;
  if (!cfg.nonlinear || all_zero(v)) return zeros_like(v);
  const std::vector<double> chi = chi_of_path(v, cfg);
  return stokes_from_forcing([&](int k) { return quadratic_tensor(v[static_cast<std::size_t>(k)], chi[static_cast<std::size_t>(k)]); },
                             static_cast<int>(v.size()) - 1, v.dt);
}

VectorSeries solution_map(const VectorSeries& v, const VectorSeries& linear, const SolveConfig& cfg) {
  return add(linear, nonlinear_term(v, cfg));
}

VectorSeries linear_solution(const VectorField& u0, const VectorField& g, const WienerPath& path) {
  return add(stokes_from_initial(u0, path.steps(), path.dt), stochastic_stokes(g, path));
}

PicardResult picard_solve(const VectorSeries& linear, const SolveConfig& cfg) {
  cfg.validate();
  PicardResult res;
  VectorSeries u = zeros_like(linear);
  for (int it = 1; it <= cfg.max_picard_iters; ++it) {
    VectorSeries next = solution_map(u, linear, cfg);
    const double d = solution_norm(subtract(next, u), cfg.solution);
    const double scale = solution_norm(next, cfg.solution);
    res.differences.push_back(d);
    res.iterations = it;
    u = std::move(next);
    if (d <= cfg.picard_tol * scale) {
      res.converged = true;
      break;
    }
  }
  res.chi = chi_of_path(u, cfg);
  res.chi_active = std::any_of(res.chi.begin(), res.chi.end(), [](double c) { return c < 1.0; });
  res.final_norm = solution_norm(u, cfg.solution);
  const std::vector<double> run = running_norm(u, cfg.solution);
  for (std::size_t k = 0; k < run.size(); ++k)
    if (run[k] >= cfg.R) {
      res.tau_index = static_cast<int>(k);
      break;
    }
  if (res.tau_index >= 0)
    for (std::size_t k = static_cast<std::size_t>(res.tau_index); k < u.size(); ++k) u[k] *= 0.0;
  res.u = std::move(u);
  return res;
}

PicardResult picard_solve(const VectorField& u0, const VectorField& g, const WienerPath& path,
                          const SolveConfig& cfg) {
  return picard_solve(linear_solution(u0, g, path), cfg);
}

double contraction_ratio(const VectorSeries& u, const VectorSeries& v, const SolveConfig& cfg) {
  const double den = solution_norm(subtract(u, v), cfg.solution);
  if (den == 0.0) return 0.0;
  return solution_norm(subtract(nonlinear_term(u, cfg), nonlinear_term(v, cfg)), cfg.solution) / den;
}

VectorField SmallData::u0(const GridSpec& spec) const { return initial_scale * initial.sample(spec); }
VectorField SmallData::g(const GridSpec& spec) const { return noise_scale * noise.sample(spec); }

double initial_data_norm(const VectorField& u0, const SolutionExponents& e) {
  const auto bank = build_filter_bank(u0.spec());
  const BesovIndex idx{-2.0 * e.alpha - 2.0 / e.q, e.p, e.q};
  return besov_norm_halfspace(u0, idx, *bank).value;
}

double noise_data_norm(const VectorField& g, const SolutionExponents& sol, const NoiseExponents& noise, double T) {
  const double a = noise.alpha2 * sol.q + 1.0;
  return lp_norm(g, noise.p2) * std::pow(std::pow(T, a) / a, 1.0 / sol.q);
}

SmallData draw_small_data(std::uint64_t seed, const GridSpec& spec, const SolveConfig& cfg) {
  std::mt19937_64 rng(seed);
  SmallData d;
  d.initial = draw_solenoidal(rng, spec);
  d.noise = draw_solenoidal(rng, spec);
  const double a = initial_data_norm(d.initial.sample(spec), cfg.solution);
  const double b = noise_data_norm(d.noise.sample(spec), cfg.solution, cfg.noise, spec.steps() * spec.dt);
  d.initial_scale = a > 0 ? 0.5 * cfg.delta / a : 0.0;
  d.noise_scale = b > 0 ? 0.5 * cfg.delta / b : 0.0;
  return d;
}

ConstantReport measure_constants(const GridSpec& spec, const SolveConfig& cfg, std::uint64_t seed, int corpus,
                                 int noise_paths, int pairs) {
  cfg.validate();
  std::mt19937_64 rng(seed);
  const int steps = spec.steps();
  const double dt = spec.dt;
  const SolutionExponents& e = cfg.solution;
  ConstantReport rep;

  for (int c = 0; c < corpus; ++c) {
    const VectorField u0 = draw_solenoidal(rng, spec).sample(spec);
    const double r = solution_norm(stokes_from_initial(u0, steps, dt), e) / initial_data_norm(u0, e);
    rep.initial = std::max(rep.initial, r);
  }

  const MomentExponents me{e.n, e.p, e.q, e.alpha, cfg.noise.p2, cfg.noise.alpha2};
  const int stride = steps % 5 == 0 ? 5 : 1;
  for (int c = 0; c < corpus; ++c) {
    const VectorField g = draw_solenoidal(rng, spec).sample(spec);
    const BdgMomentReport m =
        verify_bdg_moment(g, me, PathEnsemble(seed + 1 + static_cast<std::uint64_t>(c), static_cast<std::size_t>(noise_paths)),
                          steps, dt, stride, 200);
    const double r = std::pow(m.lhs, 1.0 / e.q) / noise_data_norm(g, e, cfg.noise, steps * dt);
    rep.noise = std::max(rep.noise, r);
  }

  const ForcingExponents fe = cfg.forcing();
  for (int c = 0; c < corpus; ++c) {
    const TensorField F = draw_tensor(rng, spec).sample(spec);
    const VectorSeries V = stokes_from_forcing([&](int) { return F; }, steps, dt);
    const std::vector<double> fn(static_cast<std::size_t>(steps) + 1, lp_norm(F, fe.p1));
    const double r = solution_norm(V, e) / weighted_bochner_norm(fn, dt, {fe.q1, fe.alpha1});
    rep.forcing = std::max(rep.forcing, r);
  }
  rep.c1 = std::max({rep.initial, rep.noise, rep.forcing});

  // Pairs inside the ball of radius R0 = 1 (the ratio is scale free).
  SolveConfig unit = cfg;
  unit.R = 1.0;
  unit.nonlinear = true;
  std::uniform_real_distribution<double> size(0.5, 1.5);
  for (int c = 0; c < pairs; ++c) {
    VectorSeries u = stokes_from_initial(draw_solenoidal(rng, spec).sample(spec), steps, dt);
    VectorSeries v = stokes_from_initial(draw_solenoidal(rng, spec).sample(spec), steps, dt);
    const double su = size(rng) / solution_norm(u, e), sv = size(rng) / solution_norm(v, e);
    for (auto& f : u.samples) f *= su;
    for (auto& f : v.samples) f *= sv;
    rep.c2 = std::max(rep.c2, contraction_ratio(u, v, unit) / unit.R);
  }
  return rep;
}

Theorem1Report monte_carlo_theorem1(const GridSpec& spec, const SolveConfig& cfg, const PathEnsemble& paths,
                                    const PathEnsemble& data_seeds) {
  cfg.validate();
  if (data_seeds.size() < paths.size()) throw DomainError("fewer data seeds than paths");
  Theorem1Report rep;
  rep.paths.resize(paths.size());
  parallel_for(paths.size(), [&](std::size_t i) {
    const SmallData data = draw_small_data(data_seeds.seed(i), spec, cfg);
    const WienerPath path = paths.path(i, spec.steps(), spec.dt);
    const PicardResult res = picard_solve(data.u0(spec), data.g(spec), path, cfg);
    PathRecord r;
    r.index = i;
    r.seed = paths.seed(i);
    r.tau_index = res.tau_index;
    r.iterations = res.iterations;
    r.converged = res.converged;
    r.final_norm = res.final_norm;
    r.chi_active = res.chi_active;
    for (std::size_t k = 2; k < res.differences.size(); ++k)
      if (res.differences[k - 1] > 0)
        r.max_difference_ratio = std::max(r.max_difference_ratio, res.differences[k] / res.differences[k - 1]);
    rep.paths[i] = r;
  });
  for (const auto& r : rep.paths) {
    if (r.tau_index != 0) ++rep.positive;
    if (r.tau_index < 0) ++rep.beyond;
    rep.all_converged = rep.all_converged && r.converged;
  }
  rep.beyond_ci = wilson_interval(rep.beyond, rep.paths.size());
  return rep;
}

WeakFormReport weak_form_check(const VectorSeries& u, const std::vector<double>& chi, const VectorField& u0,
                               const VectorField& g, const WienerPath& path) {
  if (u.size() != path.increments.size() + 1 || chi.size() != u.size())
    throw StructuralError("solution, cutoff and path lengths differ");
  const GridSpec& spec = u0.spec();
  const int n = spec.n;
  const double T = path.steps() * path.dt;
  const double tang[5] = {-0.4, -0.15, 0.1, 0.3, 0.45};
  const double norm[5] = {0.5, 0.45, 0.55, 0.5, 0.52};
  WeakFormReport rep;
  for (int i = 0; i < 5; ++i) {
    SolenoidalField phi_def;
    phi_def.potential.n = n;
    GaussianBump b;
    for (int a = 0; a < n - 1; ++a) b.centre[static_cast<std::size_t>(a)] = tang[i] * spec.L * (a == 0 ? 1.0 : -1.0);
    b.centre[static_cast<std::size_t>(n - 1)] = norm[i] * spec.H;
    b.sigma = spec.H / 14.0;
    phi_def.potential.bumps.push_back(b);
    const bool decays = i % 2 == 1;
    const auto a = [&](double t) { return decays ? std::exp(-t / T) : 1.0; };
    const auto da = [&](double t) { return decays ? -std::exp(-t / T) / T : 0.0; };

    const VectorField phi = phi_def.sample(spec);
    const VectorField lap = laplacian(phi);
    std::vector<ScalarField> grad;  // d_k phi_l at k * n + l
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) grad.push_back(partial(phi[l], k));
    const double gphi = inner_product(g, phi);

    const std::size_t K = u.size();
    std::vector<double> pair(K), drift(K);
    for (std::size_t k = 0; k < K; ++k) {
      const double t = static_cast<double>(k) * u.dt;
      pair[k] = inner_product(u[k], phi);
      double quad = 0.0;
      for (int p = 0; p < n; ++p)
        for (int l = 0; l < n; ++l) {
          const ScalarField prod(spec, Slab::Half, u[k][p].values() * u[k][l].values());
          quad += inner_product(prod, grad[static_cast<std::size_t>(p * n + l)]);
        }
      drift[k] = a(t) * inner_product(u[k], lap) + da(t) * pair[k] + a(t) * chi[k] * quad;
    }
    const double start = a(0.0) * inner_product(u0, phi);
    double integral = 0.0, integral_abs = 0.0, noise = 0.0, noise_abs = 0.0;
    double worst = 0.0, scale = 0.0;
    for (std::size_t k = 1; k < K; ++k) {
      const double t = static_cast<double>(k) * u.dt;
      integral += 0.5 * u.dt * (drift[k - 1] + drift[k]);
      integral_abs += 0.5 * u.dt * (std::abs(drift[k - 1]) + std::abs(drift[k]));
      const double dn = a(static_cast<double>(k - 1) * u.dt) * gphi * path.increments[k - 1];
      noise += dn;
      noise_abs += std::abs(dn);
      const double r = a(t) * pair[k] - start - integral - noise;
      worst = std::max(worst, std::abs(r));
      scale = std::max(scale, std::abs(a(t) * pair[k]) + std::abs(start) + integral_abs + noise_abs);
    }
    const double normalized = scale > 0 ? worst / scale : 0.0;
    rep.residuals.push_back(normalized);
    rep.max_residual = std::max(rep.max_residual, normalized);
  }
  return rep;
}

namespace {

double besov_time_norm(const VectorSeries& v, std::size_t end, int stride, const BesovIndex& idx,
                       const DyadicFilterBank& bank) {
  std::vector<double> times, norms;
  for (std::size_t k = 0; k <= end; k += static_cast<std::size_t>(stride)) {
    times.push_back(static_cast<double>(k) * v.dt);
    norms.push_back(besov_norm_halfspace(v[k], idx, bank).value);
  }
  if (times.back() != static_cast<double>(end) * v.dt) {
    times.push_back(static_cast<double>(end) * v.dt);
    norms.push_back(besov_norm_halfspace(v[end], idx, bank).value);
  }
  return times.size() < 2 ? 0.0 : weighted_bochner_norm(times, norms, {idx.q, 0.0});
}

}  // namespace

Theorem2Report theorem2_paths(const GridSpec& spec, const SolveConfig& cfg, const PathEnsemble& paths,
                              const std::vector<SmallData>& data, int stride) {
  cfg.validate();
  if (stride < 1) throw DomainError("stride must be positive");
  if (data.size() > paths.size()) throw DomainError("more data sets than paths");
  const SolutionExponents& e = cfg.solution;
  const auto bank = build_filter_bank(spec);
  const BesovIndex target{-2.0 * e.alpha, e.p, e.q};
  const BesovIndex noise_idx{-2.0 * e.alpha - 1.0, e.p, e.q};
  const double T = spec.steps() * spec.dt;
  Theorem2Report rep;
  rep.reliable = zero_extension_reliable(target);
  rep.rows.resize(data.size());
  parallel_for(data.size(), [&](std::size_t i) {
    const VectorField u0 = data[i].u0(spec);
    const VectorField g = data[i].g(spec);
    const WienerPath path = paths.path(i, spec.steps(), spec.dt);
    const VectorSeries v = stokes_from_initial(u0, path.steps(), path.dt);
    const VectorSeries u2 = stochastic_stokes(g, path);
    const VectorSeries lin = add(v, u2);
    const PicardResult res = picard_solve(lin, cfg);
    const std::size_t end = res.tau_index < 0 ? res.u.size() - 1 : static_cast<std::size_t>(std::max(res.tau_index, 1)) - 1;
    VectorSeries quad = subtract(res.u, lin);
    if (!cfg.nonlinear) quad = subtract(lin, lin);

    Theorem2Row row;
    row.index = i;
    row.besov_norm = besov_time_norm(res.u, end, stride, target, *bank);
    const double u0n = initial_data_norm(u0, e);
    const VectorSeries head{res.u.dt, {res.u.samples.begin(), res.u.samples.begin() + static_cast<std::ptrdiff_t>(end) + 1}};
    const double un = solution_norm(head, e);
    const double gn = std::pow(T, 1.0 / e.q) * besov_norm_halfspace(g, noise_idx, *bank).value;
    row.initial_ratio = u0n > 0 ? besov_time_norm(v, end, stride, target, *bank) / u0n : 0.0;
    row.quadratic_norm = besov_time_norm(quad, end, stride, target, *bank);
    row.quadratic_ratio = un > 0 ? row.quadratic_norm / (un * un) : 0.0;
    row.noise_ratio = gn > 0 ? besov_time_norm(u2, end, stride, target, *bank) / gn : 0.0;
    rep.rows[i] = row;
  });
  for (const auto& r : rep.rows) {
    rep.initial_max = std::max(rep.initial_max, r.initial_ratio);
    rep.quadratic_max = std::max(rep.quadratic_max, r.quadratic_ratio);
    rep.noise_max = std::max(rep.noise_max, r.noise_ratio);
    rep.all_finite = rep.all_finite && std::isfinite(r.besov_norm) && std::isfinite(r.initial_ratio) &&
                     std::isfinite(r.quadratic_ratio) && std::isfinite(r.noise_ratio);
  }
  return rep;
}

}  // namespace sns
