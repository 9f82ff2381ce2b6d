#include "sns/stochastic.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <cmath>
#include <random>
#include <thread>

#include "sns/heat.hpp"
#include "sns/littlewood_paley.hpp"
#include "sns/stokes.hpp"

namespace sns {

WienerPath sample_path(std::uint64_t seed, int steps, double dt) {
  if (steps < 0 || !(dt > 0)) throw DomainError("need steps >= 0 and dt > 0");
  WienerPath p;
  p.seed = seed;
  p.dt = dt;
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(dt));
  p.increments.resize(static_cast<std::size_t>(steps));
  p.values.assign(static_cast<std::size_t>(steps) + 1, 0.0);
  for (std::size_t k = 0; k < p.increments.size(); ++k) {
    p.increments[k] = normal(eng);
    p.values[k + 1] = p.values[k] + p.increments[k];
  }
  return p;
}

WienerPath sample_path(std::uint64_t seed, const GridSpec& spec) { return sample_path(seed, spec.steps(), spec.dt); }

std::uint64_t PathEnsemble::seed(std::size_t index) const {
  if (index >= count_) throw DomainError("path index out of range");
  const auto i = static_cast<std::uint64_t>(index);
  std::seed_seq seq{static_cast<std::uint32_t>(master_), static_cast<std::uint32_t>(master_ >> 32),
                    static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

WienerPath PathEnsemble::path(std::size_t index, int steps, double dt) const {
  return sample_path(seed(index), steps, dt);
}

std::vector<double> ito_integrate(std::span<const double> integrand, const WienerPath& path) {
  if (integrand.size() < path.increments.size()) throw DomainError("integrand shorter than the path");
  std::vector<double> out(path.increments.size() + 1, 0.0);
  NeumaierSum acc;
  for (std::size_t k = 0; k < path.increments.size(); ++k) {
    acc.add(integrand[k] * path.increments[k]);
    out[k + 1] = acc.value();
  }
  return out;
}

VectorSeries ito_integrate(const VectorSeries& integrand, const WienerPath& path) {
  if (integrand.size() < path.increments.size()) throw DomainError("integrand shorter than the path");
  if (integrand.size() == 0) return {path.dt, {}};
  VectorSeries out{path.dt, {}};
  VectorField acc = 0.0 * integrand[0];
  out.samples.push_back(acc);
  for (std::size_t k = 0; k < path.increments.size(); ++k) {
    acc += path.increments[k] * integrand[k];
    out.samples.push_back(acc);
  }
  return out;
}

VectorSeries stochastic_stokes(const VectorSeries& g, const WienerPath& path) {
  if (g.size() < path.increments.size()) throw DomainError("noise coefficient shorter than the path");
  if (g.size() == 0) return {path.dt, {}};
  StokesPropagator prop(g[0].spec());
  VectorSeries out{path.dt, {}};
  out.samples.push_back(VectorField(g[0].spec(), Slab::Half));
  for (std::size_t k = 0; k < path.increments.size(); ++k) {
    prop.add(g[k], path.increments[k]);
    prop.advance(path.dt);
    out.samples.push_back(prop.evaluate());
  }
  return out;
}

VectorSeries stochastic_stokes(const VectorField& g, const WienerPath& path) {
  StokesPropagator prop(g.spec());
  const auto prepared = prop.prepare(g);
  VectorSeries out{path.dt, {}};
  out.samples.push_back(VectorField(g.spec(), Slab::Half));
  for (const double db : path.increments) {
    prop.add(prepared, db);
    prop.advance(path.dt);
    out.samples.push_back(prop.evaluate());
  }
  return out;
}

void NeumaierSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    carry_ += (sum_ - t) + x;
  else
    carry_ += (x - t) + sum_;
  sum_ = t;
}

MeanEstimate estimate_mean(std::span<const double> samples) {
  MeanEstimate e;
  e.count = samples.size();
  if (samples.empty()) return e;
  NeumaierSum s;
  for (const double x : samples) s.add(x);
  e.mean = s.value() / static_cast<double>(samples.size());
  if (samples.size() < 2) return e;
  NeumaierSum v;
  for (const double x : samples) v.add((x - e.mean) * (x - e.mean));
  const double var = v.value() / static_cast<double>(samples.size() - 1);
  e.standard_error = std::sqrt(var / static_cast<double>(samples.size()));
  return e;
}

Interval bootstrap_mean(std::span<const double> samples, int resamples, std::uint64_t seed, double level) {
  if (samples.empty() || resamples < 1) throw DomainError("bootstrap needs samples and resamples");
  std::mt19937_64 eng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, samples.size() - 1);
  std::vector<double> means(static_cast<std::size_t>(resamples));
  for (auto& m : means) {
    NeumaierSum s;
    for (std::size_t i = 0; i < samples.size(); ++i) s.add(samples[pick(eng)]);
    m = s.value() / static_cast<double>(samples.size());
  }
  std::sort(means.begin(), means.end());
  const double tail = 0.5 * (1.0 - level);
  const auto at = [&](double q) {
    const auto i = static_cast<std::size_t>(std::clamp(q * (resamples - 1), 0.0, resamples - 1.0));
    return means[i];
  };
  return {at(tail), at(1.0 - tail)};
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += threads) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

namespace {

void summarize(BdgMomentReport& rep, int resamples, std::uint64_t seed) {
  rep.paths = rep.samples.size();
  const MeanEstimate m = estimate_mean(rep.samples);
  rep.lhs = m.mean;
  if (!(rep.rhs > 0.0)) {
    rep.degenerate = true;
    rep.ratio = 0.0;
    rep.ratio_ci = {0.0, 0.0};
    return;
  }
  rep.ratio = rep.lhs / rep.rhs;
  const Interval ci = bootstrap_mean(rep.samples, resamples, seed);
  rep.ratio_ci = {ci.lo / rep.rhs, ci.hi / rep.rhs};
}

}  // namespace

BdgMomentReport verify_bdg_moment(const VectorField& g, const MomentExponents& e, const PathEnsemble& paths,
                                  int steps, double dt, int stride, int resamples) {
  validate(e);
  if (stride < 1 || steps < stride || steps % stride != 0) throw DomainError("steps must be a positive multiple of stride");
  if (g.spec().n != e.n) throw ConfigurationError("grid dimension does not match the exponents");
  BdgMomentReport rep;
  const std::vector<double> gnorm(static_cast<std::size_t>(steps) + 1, lp_norm(g, e.p2));
  rep.rhs = std::pow(weighted_bochner_norm(gnorm, dt, {e.q, e.alpha2}), e.q);
  rep.samples.assign(paths.size(), 0.0);
  if (rep.rhs == 0.0) {
    summarize(rep, resamples, paths.master_seed());
    return rep;
  }

  auto grid = SpectralGrid::of(g.spec());
  const ModulusGroups groups = group_by_modulus(*grid);
  const Eigen::ArrayXd decay = (-groups.lambda * dt).exp();
  const StokesPropagator proto(g.spec());
  const auto prepared = proto.prepare(g);

  parallel_for(paths.size(), [&](std::size_t m) {
    const WienerPath path = paths.path(m, steps, dt);
    StokesPropagator prop(g.spec());
    Eigen::ArrayXd c = Eigen::ArrayXd::Zero(groups.lambda.size());
    std::vector<double> norms{0.0};
    for (int k = 0; k < steps; ++k) {
      c = decay * (c + path.increments[static_cast<std::size_t>(k)]);
      if ((k + 1) % stride != 0) continue;
      prop.assign(prepared, groups.expand(c));
      norms.push_back(lp_norm(prop.evaluate(), e.p));
    }
    rep.samples[m] = std::pow(weighted_bochner_norm(norms, stride * dt, {e.q, e.alpha}), e.q);
  });
  summarize(rep, resamples, paths.master_seed());
  return rep;
}

BdgMomentReport bdg_subset(const BdgMomentReport& full, std::size_t count, int resamples, std::uint64_t seed) {
  if (count > full.samples.size()) throw DomainError("subset larger than the ensemble");
  BdgMomentReport rep;
  rep.rhs = full.rhs;
  rep.samples.assign(full.samples.begin(), full.samples.begin() + static_cast<std::ptrdiff_t>(count));
  summarize(rep, resamples, seed);
  return rep;
}

IsometryReport verify_field_isometry(const VectorField& g, const PathEnsemble& paths, int steps, double dt) {
  if (steps < 1 || !(dt > 0)) throw DomainError("need steps >= 1 and dt > 0");
  IsometryReport rep;
  const double T = steps * dt;
  NeumaierSum oracle;
  for (int k = 0; k < steps; ++k) oracle.add(dt * std::pow(lp_norm(apply_stokes_kernel(g, T, k * dt), 2.0), 2));
  rep.oracle = oracle.value();

  auto grid = SpectralGrid::of(g.spec());
  const ModulusGroups groups = group_by_modulus(*grid);
  const Eigen::ArrayXd decay = (-groups.lambda * dt).exp();
  const StokesPropagator proto(g.spec());
  const auto prepared = proto.prepare(g);
  std::vector<double> samples(paths.size());
  parallel_for(paths.size(), [&](std::size_t m) {
    const WienerPath path = paths.path(m, steps, dt);
    Eigen::ArrayXd c = Eigen::ArrayXd::Zero(groups.lambda.size());
    for (const double db : path.increments) c = decay * (c + db);
    StokesPropagator prop(g.spec());
    prop.assign(prepared, groups.expand(c));
    samples[m] = std::pow(lp_norm(prop.evaluate(), 2.0), 2);
  });
  const MeanEstimate est = estimate_mean(samples);
  rep.estimate = est.mean;
  rep.standard_error = est.standard_error;
  rep.z = est.standard_error > 0 ? std::abs(rep.estimate - rep.oracle) / est.standard_error : 0.0;
  return rep;
}

BandBdgReport verify_band_bdg(const ScalarField& g, int j_lo, int j_hi, double q, const PathEnsemble& paths,
                              int steps, double dt) {
  if (!(q >= 2.0)) throw DomainError("band moment bound needs q >= 2");
  if (g.slab() != Slab::Full) throw StructuralError("band moment bound acts on doubled-torus fields");
  if (j_hi < j_lo || steps < 1 || !(dt > 0)) throw DomainError("invalid band range or time grid");
  const auto bank = build_filter_bank(g.spec());
  const SpectralGrid& grid = bank->grid();
  const Spectrum s = grid.forward(g);
  const ModulusGroups groups = group_by_modulus(grid);
  const double N = grid.full_points();
  const Eigen::ArrayXd mass = grid.torus_volume() / (N * N) * grid.hermitian_weight() * s.abs2();
  const Eigen::Index G = groups.lambda.size();
  const int bands = j_hi - j_lo + 1;

  // Band masses per group, then keep only the groups some band sees.
  Eigen::ArrayXXd A = Eigen::ArrayXXd::Zero(bands, G);
  for (int b = 0; b < bands; ++b) {
    const int j = j_lo + b;
    if (j < bank->j_min() || j > bank->j_max()) continue;
    const Eigen::ArrayXd w2 = bank->weights(j).square();
    for (Eigen::Index i = 0; i < mass.size(); ++i) A(b, groups.group[i]) += w2[i] * mass[i];
  }
  std::vector<Eigen::Index> active;
  for (Eigen::Index k = 0; k < G; ++k)
    if ((A.col(k) > 0).any()) active.push_back(k);
  const auto Ga = static_cast<Eigen::Index>(active.size());
  Eigen::ArrayXXd Aa(bands, Ga);
  Eigen::ArrayXd decay(Ga);
  for (Eigen::Index k = 0; k < Ga; ++k) {
    Aa.col(k) = A.col(active[static_cast<std::size_t>(k)]);
    decay[k] = std::exp(-groups.lambda[active[static_cast<std::size_t>(k)]] * dt);
  }

  BandBdgReport rep;
  const double T = steps * dt;
  const double total = std::sqrt(mass.sum());
  for (int b = 0; b < bands; ++b) {
    BandBdgEntry e;
    e.j = j_lo + b;
    const double band = std::sqrt(A.row(b).sum());
    e.skipped = !(band > 1e-12 * total);
    e.rhs = T * std::pow(band, q);
    rep.bands.push_back(e);
  }

  std::vector<std::vector<double>> samples(static_cast<std::size_t>(bands), std::vector<double>(paths.size()));
  parallel_for(paths.size(), [&](std::size_t m) {
    const WienerPath path = paths.path(m, steps, dt);
    Eigen::ArrayXd c = Eigen::ArrayXd::Zero(Ga);
    Eigen::ArrayXd integral = Eigen::ArrayXd::Zero(bands);
    for (int k = 0; k < steps; ++k) {
      c = decay * (c + path.increments[static_cast<std::size_t>(k)]);
      const Eigen::ArrayXd band2 = (Aa.rowwise() * c.square().transpose()).rowwise().sum();
      const double w = k + 1 == steps ? 0.5 * dt : dt;
      integral += w * band2.pow(0.5 * q);
    }
    for (int b = 0; b < bands; ++b)
      samples[static_cast<std::size_t>(b)][m] = std::exp2(q * (j_lo + b)) * integral[b];
  });

  double cmin = 0.0, cmax = 0.0;
  bool first = true;
  for (int b = 0; b < bands; ++b) {
    BandBdgEntry& e = rep.bands[static_cast<std::size_t>(b)];
    if (e.skipped) continue;
    const MeanEstimate m = estimate_mean(samples[static_cast<std::size_t>(b)]);
    e.lhs = m.mean;
    e.lhs_se = m.standard_error;
    e.constant = e.lhs / e.rhs;
    cmin = first ? e.constant : std::min(cmin, e.constant);
    cmax = first ? e.constant : std::max(cmax, e.constant);
    first = false;
  }
  rep.spread = first || cmin <= 0 ? 0.0 : cmax / cmin;
  return rep;
}

}  // namespace sns
