#include <algorithm>
#include <cmath>
#include <random>

#include "sns/helmholtz.hpp"
#include "sns/littlewood_paley.hpp"
#include "sns/nse.hpp"
#include "sns/random_fields.hpp"
#include "sns/stochastic.hpp"
#include "sns/stokes.hpp"
#include "sns/suites.hpp"
#include "suite_support.hpp"

namespace sns {

using detail::derived_seed;
using detail::suite_rng;

Report duality_suite(const SuiteConfig& cfg) {
  Report r;
  r.suite = "duality";
  const int n = cfg.grid.n;
  const DualityExponents accepted{n, 2.0, 4.0, 0.0, 2.0, 2.0, 0.25};
  {
    bool rejected = false;
    try {
      validate(DualityExponents{n, 2.0, 4.0, 0.0, 2.0, 2.0, 0.0});
    } catch (const ConfigurationError&) {
      rejected = true;
    }
    bool accepts = true;
    try {
      validate(accepted);
    } catch (const ConfigurationError&) {
      accepts = false;
    }
    r.check("validator", "unbalanced_tuple_rejected", rejected);
    r.check("validator", "balanced_tuple_accepted", accepts);
  }
  auto rng = suite_rng(cfg.seed, "duality");
  std::normal_distribution<double> coef(0.0, 1.0);
  const int steps = cfg.grid.steps();
  std::vector<TensorBumps> tensors;
  std::vector<std::vector<double>> profiles;
  for (int c = 0; c < cfg.corpus; ++c) {
    tensors.push_back(draw_tensor(rng, cfg.grid));
    const double c0 = coef(rng), c1 = coef(rng), c2 = coef(rng);
    std::vector<double> a(static_cast<std::size_t>(steps) + 1);
    for (int k = 0; k <= steps; ++k) {
      const double s = static_cast<double>(k) / steps;
      a[static_cast<std::size_t>(k)] = c0 + c1 * std::sin(std::numbers::pi * s) + c2 * std::cos(3.0 * std::numbers::pi * s);
    }
    profiles.push_back(std::move(a));
  }
  const auto max_ratio = [&](const GridSpec& g) {
    std::vector<DualityCase> corpus;
    for (std::size_t c = 0; c < tensors.size(); ++c)
      corpus.push_back({project_tensor(tensors[c].sample(g)).fprime, profiles[c], g.dt});
    return verify_duality_estimate(corpus, accepted);
  };
  const DualityReport a = max_ratio(cfg.grid), b = max_ratio(cfg.grid.refined(2));
  r.finite("duality-estimate", "max_ratio", a.max_ratio);
  r.stable("duality-estimate", "refinement_change", a.max_ratio, b.max_ratio, 0.15);
  r.details["coarse"] = a.ratios;
  r.details["fine"] = b.ratios;
  return r;
}

Report bdg_suite(const SuiteConfig& cfg) {
  Report r;
  r.suite = "bdg";
  const int steps = cfg.grid.steps();
  const double dt = cfg.grid.dt, T = steps * dt;
  {
    const PathEnsemble ens(derived_seed(cfg.seed, "scalar-ito"), static_cast<std::size_t>(cfg.scalar_paths));
    std::vector<double> squares, ends, ends2;
    for (std::size_t i = 0; i < ens.size(); ++i) {
      const WienerPath p = ens.path(i, steps, dt);
      NeumaierSum s;
      for (int k = 0; k < steps; ++k) s.add(k * dt * p.increments[static_cast<std::size_t>(k)]);
      squares.push_back(s.value() * s.value());
      ends.push_back(p.values.back());
      ends2.push_back(p.values.back() * p.values.back());
    }
    const MeanEstimate sq = estimate_mean(squares), end = estimate_mean(ends), var = estimate_mean(ends2);
    const double oracle = T * T * T / 3.0;
    r.at_most("ito-isometry", "scalar_z_score", std::abs(sq.mean - oracle) / sq.standard_error, 4.0,
              sq.standard_error);
    r.at_most("wiener-path", "mean_end_z_score", std::abs(end.mean) / end.standard_error, 3.0, end.standard_error);
    r.at_most("wiener-path", "end_variance_relative_error", std::abs(var.mean / T - 1.0), 0.05);
    r.details["scalar"] = {{"estimate", sq.mean}, {"oracle", oracle}, {"se", sq.standard_error}};
  }
  auto rng = suite_rng(cfg.seed, "bdg");
  {
    const VectorField g = draw_solenoidal(rng, cfg.grid).sample(cfg.grid);
    const IsometryReport iso = verify_field_isometry(
        g, PathEnsemble(derived_seed(cfg.seed, "field-ito"), static_cast<std::size_t>(cfg.field_paths)), steps, dt);
    r.at_most("ito-isometry", "field_z_score", iso.z, 4.0, iso.standard_error);
    r.details["field"] = {{"estimate", iso.estimate}, {"oracle", iso.oracle}, {"se", iso.standard_error}};
  }
  {
    // Band-limited time-constant data; the left-point sums need lambda_j dt << 1 on every band.
    const double band_dt = 2.5e-4;
    const int band_steps = static_cast<int>(std::lround(T / band_dt));
    const ScalarField g = draw_band_modes(rng, cfg.grid, -1, 2, 4).sample(cfg.grid);
    const BandBdgReport rep =
        verify_band_bdg(g, -1, 2, 4.0,
                        PathEnsemble(derived_seed(cfg.seed, "band-bdg"), static_cast<std::size_t>(cfg.field_paths)),
                        band_steps, band_dt);
    std::size_t used = 0;
    nlohmann::json bands = nlohmann::json::array();
    for (const auto& b : rep.bands) {
      if (!b.skipped) ++used;
      bands.push_back({{"j", b.j}, {"lhs", b.lhs}, {"lhs_se", b.lhs_se}, {"rhs", b.rhs}, {"constant", b.constant}});
    }
    r.at_least("band-bdg", "bands_used", static_cast<double>(used), 4.0);
    r.at_most("band-bdg", "max_over_min_constant", rep.spread, 10.0);
    for (std::size_t a = 0; a + 2 < rep.bands.size(); ++a) {
      const auto& x = rep.bands[a];
      const auto& y = rep.bands[a + 2];
      if (x.skipped || y.skipped) continue;
      const double ratio = std::max(x.constant, y.constant) / std::min(x.constant, y.constant);
      r.at_most("band-bdg", "constant_ratio_j" + std::to_string(x.j) + "_j" + std::to_string(y.j), ratio, 3.0);
    }
    r.details["bands"] = bands;
  }
  {
    GridSpec small = cfg.grid;
    small.m_tangential = small.m_normal = 64;
    const SolutionExponents& e = cfg.solution;
    const MomentExponents me{e.n, e.p, e.q, e.alpha, cfg.noise.p2, cfg.noise.alpha2};
    const VectorField g = draw_solenoidal(rng, small).sample(small);
    const int stride = steps % 5 == 0 ? 5 : 1;
    const BdgMomentReport full = verify_bdg_moment(
        g, me, PathEnsemble(derived_seed(cfg.seed, "moment"), static_cast<std::size_t>(cfg.moment_paths)), steps,
        dt, stride, 1000);
    const BdgMomentReport half =
        bdg_subset(full, full.paths / 2, 1000, derived_seed(cfg.seed, "moment-bootstrap"));
    r.finite("bdg-moment", "ratio", full.ratio);
    r.stable("bdg-moment", "upper_ci_change_on_doubling", half.ratio_ci.hi, full.ratio_ci.hi, 0.20);
    r.details["moment"] = {{"ratio", full.ratio},
                           {"ci", {full.ratio_ci.lo, full.ratio_ci.hi}},
                           {"half_ci", {half.ratio_ci.lo, half.ratio_ci.hi}}};
  }
  return r;
}

namespace {

SolveConfig base_solve_config(const SuiteConfig& cfg) {
  SolveConfig s;
  s.solution = cfg.solution;
  s.noise = cfg.noise;
  s.epsilon = cfg.epsilon;
  return s;
}

// R = 0.01 / (5 C1 + C2), delta = R^2.
SolveConfig compliant_config(const SuiteConfig& cfg, ConstantReport& constants) {
  SolveConfig s = base_solve_config(cfg);
  constants = measure_constants(cfg.grid, s, derived_seed(cfg.seed, "constants"));
  s.R = 0.01 / (5.0 * constants.c1 + constants.c2);
  s.delta = s.R * s.R;
  return s;
}

nlohmann::json to_json(const ConstantReport& c) {
  return {{"initial", c.initial}, {"noise", c.noise}, {"forcing", c.forcing}, {"c1", c.c1}, {"c2", c.c2}};
}

double bilinear_norm(const VectorSeries& v, const std::vector<double>& chi, const SolutionExponents& e) {
  std::vector<double> norms;
  for (std::size_t k = 0; k < v.size(); ++k) norms.push_back(lp_norm(quadratic_tensor(v[k], chi[k]), e.p / 2.0));
  return weighted_bochner_norm(norms, v.dt, {e.q / 2.0, 2.0 * e.alpha});
}

VectorSeries scaled(const VectorSeries& v, double a) {
  VectorSeries out = v;
  for (auto& f : out.samples) f *= a;
  return out;
}

}  // namespace

Report fixedpoint_suite(const SuiteConfig& cfg) {
  Report r;
  r.suite = "fixedpoint";
  const SolutionExponents& e = cfg.solution;
  const int steps = cfg.grid.steps();
  const double dt = cfg.grid.dt;
  {
    const double R = 0.5;
    r.check("cutoff-formula", "theta(0)_is_1", cutoff_theta(0.0, R) == 1.0);
    r.check("cutoff-formula", "theta(2R)_is_0", cutoff_theta(2.0 * R, R) == 0.0);
    r.check("cutoff-formula", "theta(1.5R)_is_0.5", cutoff_theta(1.5 * R, R) == 0.5);
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
      const double s = i * 0.01 * 0.37, R2 = 0.37;
      worst = std::max(worst, std::abs(cutoff_theta(s, R2) - std::min(1.0, std::max(0.0, 2.0 - s / R2))));
    }
    r.at_most("cutoff-formula", "clamp_max_error", worst, 0.0);
  }

  ConstantReport constants;
  const SolveConfig sc = compliant_config(cfg, constants);
  r.finite("constants", "c1", constants.c1);
  r.finite("constants", "c2", constants.c2);
  r.details["constants"] = to_json(constants);
  r.details["R"] = sc.R;

  auto rng = suite_rng(cfg.seed, "fixedpoint");
  std::vector<VectorSeries> base;
  for (int i = 0; i < 10; ++i) {
    VectorSeries v = stokes_from_initial(draw_solenoidal(rng, cfg.grid).sample(cfg.grid), steps, dt);
    base.push_back(scaled(v, 1.0 / solution_norm(v, e)));
  }
  std::uniform_int_distribution<int> pick(0, 9);
  {
    // chi is 1 on zero data and nonincreasing in time
    const std::vector<double> chi0 = chi_of_path(scaled(base[0], 0.0), sc);
    r.check("cutoff-formula", "chi_of_zero_is_1", std::all_of(chi0.begin(), chi0.end(), [](double c) { return c == 1.0; }));
    const std::vector<double> chi = chi_of_path(scaled(base[0], 3.0 * sc.R), sc);
    bool monotone = true;
    for (std::size_t k = 1; k < chi.size(); ++k) monotone = monotone && chi[k] <= chi[k - 1];
    r.check("cutoff-formula", "chi_nonincreasing", monotone);
    r.check("cutoff-formula", "chi_saturates_past_2R", chi.back() == 0.0);
  }
  {
    std::uniform_real_distribution<double> size(0.2 * sc.R, 3.0 * sc.R);
    double violation = -1.0, bilinear = 0.0;
    for (int c = 0; c < 50; ++c) {
      const VectorSeries u = scaled(base[static_cast<std::size_t>(pick(rng))], size(rng));
      const VectorSeries v = scaled(base[static_cast<std::size_t>(pick(rng))], size(rng));
      const std::vector<double> cu = chi_of_path(u, sc), cv = chi_of_path(v, sc);
      const std::vector<double> run = running_norm(subtract(u, v), e);
      for (std::size_t k = 0; k < cu.size(); ++k)
        violation = std::max(violation, std::abs(cu[k] - cv[k]) - run[k] / sc.R);
      bilinear = std::max(bilinear, bilinear_norm(u, cu, e) - 4.0 * sc.R * sc.R);
    }
    r.at_most("lipschitz", "max_excess_over_bound", violation, 1e-6);
    r.at_most("bilinear-bound", "max_excess_over_4R2", bilinear, 1e-8);
  }
  {
    std::uniform_real_distribution<double> size(0.1 * sc.R, 0.9 * sc.R);
    double kappa = 0.0;
    for (int c = 0; c < 4; ++c) {
      const VectorSeries u = scaled(base[static_cast<std::size_t>(pick(rng))], size(rng));
      const VectorSeries v = scaled(base[static_cast<std::size_t>(pick(rng))], size(rng));
      kappa = std::max(kappa, contraction_ratio(u, v, sc));
    }
    r.at_most("contraction", "measured_kappa", kappa, 1.0 - 1e-12);
  }
  {
    double worst_ratio = 0.0, residual = 0.0, bilinear = 0.0;
    bool converged = true;
    for (int i = 0; i < 3; ++i) {
      const SmallData d = draw_small_data(derived_seed(cfg.seed, "fixedpoint-data-" + std::to_string(i)), cfg.grid, sc);
      const WienerPath path = sample_path(derived_seed(cfg.seed, "fixedpoint-path-" + std::to_string(i)), steps, dt);
      const VectorSeries lin = linear_solution(d.u0(cfg.grid), d.g(cfg.grid), path);
      const PicardResult res = picard_solve(lin, sc);
      converged = converged && res.converged;
      for (std::size_t k = 2; k < res.differences.size(); ++k)
        if (res.differences[k - 1] > 0)
          worst_ratio = std::max(worst_ratio, res.differences[k] / res.differences[k - 1]);
      const double un = solution_norm(res.u, e);
      residual = std::max(residual, solution_norm(subtract(res.u, solution_map(res.u, lin, sc)), e) / un);
      bilinear = std::max(bilinear, bilinear_norm(res.u, res.chi, e) - 4.0 * sc.R * sc.R);
    }
    r.check("picard", "all_converged", converged);
    r.at_most("picard", "max_difference_ratio_after_2", worst_ratio, 0.9);
    r.at_most("picard", "fixed_point_residual", residual, 2.0 * sc.picard_tol);
    r.at_most("bilinear-bound", "solution_excess_over_4R2", bilinear, 1e-8);
  }
  {
    const VectorField zero(cfg.grid, Slab::Half);
    const WienerPath path = sample_path(derived_seed(cfg.seed, "fixedpoint-zero"), steps, dt);
    const PicardResult res = picard_solve(zero, zero, path, sc);
    r.check("stopping-time", "zero_data_beyond_horizon", res.tau_index == -1 && res.iterations == 1 &&
                                                          res.final_norm == 0.0);
  }
  {
    // Large initial value: tau is finite and is the first crossing of the
    // running norm of S(u), which equals u up to tau.
    VectorField u0 = draw_solenoidal(rng, cfg.grid).sample(cfg.grid);
    const double size = solution_norm(stokes_from_initial(u0, steps, dt), e);
    u0 *= 100.0 * sc.R / size;
    const VectorField zero(cfg.grid, Slab::Half);
    const WienerPath path = sample_path(derived_seed(cfg.seed, "fixedpoint-large"), steps, dt);
    const VectorSeries lin = linear_solution(u0, zero, path);
    const PicardResult res = picard_solve(lin, sc);
    const std::vector<double> run = running_norm(solution_map(res.u, lin, sc), e);
    int crossing = -1;
    for (std::size_t k = 0; k < run.size(); ++k)
      if (run[k] >= sc.R) {
        crossing = static_cast<int>(k);
        break;
      }
    r.check("stopping-time", "large_data_tau_finite", res.tau_index > 0);
    r.check("stopping-time", "large_data_tau_is_first_crossing", res.tau_index == crossing);
    r.details["large_data_tau_index"] = res.tau_index;
  }
  return r;
}

namespace {

std::filesystem::path theorem1_dir(const std::filesystem::path& out) { return out / "theorem1"; }

}  // namespace

Report theorem1_suite(const SuiteConfig& cfg) {
  Report r;
  r.suite = "theorem1";
  ConstantReport constants;
  const SolveConfig sc = compliant_config(cfg, constants);
  const auto M = static_cast<std::size_t>(cfg.theorem1_paths);
  const PathEnsemble paths(derived_seed(cfg.seed, "theorem1-paths"), M);
  const PathEnsemble data(derived_seed(cfg.seed, "theorem1-data"), M);
  const Theorem1Report rep = monte_carlo_theorem1(cfg.grid, sc, paths, data);

  r.finite("constants", "c1", constants.c1);
  r.finite("constants", "c2", constants.c2);
  r.add("tau-positive", "fraction_tau_positive", static_cast<double>(rep.positive) / static_cast<double>(M), 1.0,
        rep.positive == M);
  r.at_least("tau-beyond-horizon", "wilson_lower_bound", rep.beyond_ci.lo, 1.0 - cfg.epsilon);
  r.check("picard", "all_paths_converged", rep.all_converged);
  double worst_ratio = 0.0;
  for (const auto& p : rep.paths) worst_ratio = std::max(worst_ratio, p.max_difference_ratio);
  r.at_most("picard", "max_difference_ratio_after_2", worst_ratio, 0.9);

  // Weak-form pairing on the first path.
  {
    const SmallData d = draw_small_data(data.seed(0), cfg.grid, sc);
    const WienerPath path = paths.path(0, cfg.grid.steps(), cfg.grid.dt);
    const VectorField u0 = d.u0(cfg.grid), g = d.g(cfg.grid);
    const PicardResult res = picard_solve(u0, g, path, sc);
    const WeakFormReport wf = weak_form_check(res.u, res.chi, u0, g, path);
    const double h = std::max(cfg.grid.h_tangential(), cfg.grid.h_normal());
    r.at_most("weak-form", "max_normalized_residual", wf.max_residual, 10.0 * (cfg.grid.dt + h * h));
    r.details["weak_form_residuals"] = wf.residuals;

    const auto dir = theorem1_dir(cfg.out);
    std::filesystem::create_directories(dir);
    for (int i = 0; i < std::min(cfg.stored_solutions, cfg.theorem1_paths); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "path-%04d", i);
      if (i == 0) {
        write_series(dir / name, res.u, cfg.store_stride);
      } else {
        const SmallData di = draw_small_data(data.seed(static_cast<std::size_t>(i)), cfg.grid, sc);
        const WienerPath pi = paths.path(static_cast<std::size_t>(i), cfg.grid.steps(), cfg.grid.dt);
        write_series(dir / name, picard_solve(di.u0(cfg.grid), di.g(cfg.grid), pi, sc).u, cfg.store_stride);
      }
    }
  }

  nlohmann::json rows = nlohmann::json::array();
  for (const auto& p : rep.paths) {
    const SmallData d = draw_small_data(data.seed(p.index), cfg.grid, sc);
    rows.push_back({{"index", p.index},
                    {"seed", p.seed},
                    {"data_seed", data.seed(p.index)},
                    {"initial_scale", d.initial_scale},
                    {"noise_scale", d.noise_scale},
                    {"tau_index", p.tau_index},
                    {"tau", p.tau_index < 0 ? nlohmann::json("beyond T") : nlohmann::json(p.tau_index * cfg.grid.dt)},
                    {"iterations", p.iterations},
                    {"converged", p.converged},
                    {"final_norm", p.final_norm},
                    {"chi_active", p.chi_active},
                    {"max_difference_ratio", p.max_difference_ratio}});
  }
  nlohmann::json manifest{{"config", to_json(cfg)},
                          {"R", sc.R},
                          {"delta", sc.delta},
                          {"epsilon", sc.epsilon},
                          {"picard_tol", sc.picard_tol},
                          {"max_picard_iters", sc.max_picard_iters},
                          {"path_master_seed", paths.master_seed()},
                          {"data_master_seed", data.master_seed()},
                          {"constants", to_json(constants)},
                          {"tau_positive", rep.positive},
                          {"tau_beyond_horizon", rep.beyond},
                          {"beyond_wilson", {rep.beyond_ci.lo, rep.beyond_ci.hi}},
                          {"paths", rows}};
  write_json(theorem1_dir(cfg.out) / "manifest.json", manifest);
  r.details["R"] = sc.R;
  r.details["delta"] = sc.delta;
  r.details["constants"] = to_json(constants);
  r.details["beyond_wilson"] = {rep.beyond_ci.lo, rep.beyond_ci.hi};
  return r;
}

Report theorem2_suite(const SuiteConfig& cfg) {
  Report r;
  r.suite = "theorem2";
  const std::filesystem::path dir = cfg.input.empty() ? theorem1_dir(cfg.out) : cfg.input;
  const std::filesystem::path file = dir / "manifest.json";
  if (!std::filesystem::exists(file))
    throw DomainError("theorem2 needs a stored theorem1 run: " + file.string() + " not found");
  const nlohmann::json m = read_json(file);
  const SuiteConfig run = suite_config_from_json(m.at("config"));
  SolveConfig sc = base_solve_config(run);
  sc.R = m.at("R").get<double>();
  sc.delta = m.at("delta").get<double>();
  sc.epsilon = m.at("epsilon").get<double>();
  sc.picard_tol = m.at("picard_tol").get<double>();
  sc.max_picard_iters = m.at("max_picard_iters").get<int>();

  const auto& rows = m.at("paths");
  const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(cfg.theorem2_paths), rows.size());
  const PathEnsemble paths(m.at("path_master_seed").get<std::uint64_t>(), rows.size());
  std::vector<SmallData> data;
  for (std::size_t i = 0; i < count; ++i) {
    SmallData d = draw_small_data(rows[i].at("data_seed").get<std::uint64_t>(), run.grid, sc);
    d.initial_scale = rows[i].at("initial_scale").get<double>();
    d.noise_scale = rows[i].at("noise_scale").get<double>();
    data.push_back(d);
  }
  const Theorem2Report coarse = theorem2_paths(run.grid, sc, paths, data);
  const Theorem2Report fine = theorem2_paths(run.grid.refined(2), sc, paths, data);

  double largest = 0.0;
  for (const auto& row : coarse.rows) largest = std::max(largest, row.besov_norm);
  r.check("besov-finite", "all_norms_finite", coarse.all_finite && fine.all_finite);
  r.finite("besov-finite", "max_besov_norm", largest);
  r.finite("initial-part", "max_ratio", coarse.initial_max);
  r.stable("initial-part", "refinement_change", coarse.initial_max, fine.initial_max, 0.20);
  r.finite("quadratic-part", "max_ratio", coarse.quadratic_max);
  r.stable("quadratic-part", "refinement_change", coarse.quadratic_max, fine.quadratic_max, 0.20);
  r.finite("noise-part", "max_ratio", coarse.noise_max);
  r.stable("noise-part", "refinement_change", coarse.noise_max, fine.noise_max, 0.20);

  {
    SolveConfig linear = sc;
    linear.nonlinear = false;
    const std::vector<SmallData> few(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(3, data.size())));
    const Theorem2Report lin = theorem2_paths(run.grid, linear, paths, few);
    bool zero = true;
    for (const auto& row : lin.rows) zero = zero && row.quadratic_norm == 0.0;
    r.check("linear-only", "quadratic_part_zero", zero);
  }
  {
    SmallData z = data.front();
    z.initial_scale = z.noise_scale = 0.0;
    const Theorem2Report zr = theorem2_paths(run.grid, sc, paths, std::vector<SmallData>{z});
    const auto& row = zr.rows.front();
    r.check("zero-data", "all_parts_zero",
            row.besov_norm == 0.0 && row.initial_ratio == 0.0 && row.quadratic_norm == 0.0 && row.noise_ratio == 0.0);
  }
  nlohmann::json table = nlohmann::json::array();
  for (std::size_t i = 0; i < coarse.rows.size(); ++i) {
    const auto& a = coarse.rows[i];
    const auto& b = fine.rows[i];
    table.push_back({{"index", a.index},
                     {"besov_norm", a.besov_norm},
                     {"initial_ratio", {a.initial_ratio, b.initial_ratio}},
                     {"quadratic_ratio", {a.quadratic_ratio, b.quadratic_ratio}},
                     {"noise_ratio", {a.noise_ratio, b.noise_ratio}}});
  }
  r.details["rows"] = table;
  r.details["surrogate_reliable"] = coarse.reliable;
  r.details["input"] = dir.string();
  return r;
}

}  // namespace sns
