#include "sns/littlewood_paley.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>

namespace sns {

namespace {

double bump_tail(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

double bump_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = bump_tail(x);
  return a / (a + bump_tail(1.0 - x));
}

}  // namespace

double psi_hat(double r) { return bump_step(2.0 - r); }

double phi_hat(double r) { return psi_hat(r) - psi_hat(2.0 * r); }

void BesovIndex::validate() const {
  if (!(p >= 1.0)) throw DomainError("Besov integrability p must be >= 1");
  if (!(q >= 1.0)) throw DomainError("Besov summability q must be >= 1");
  if (!std::isfinite(s)) throw DomainError("Besov smoothness must be finite");
}

void WeightedIndex::validate() const {
  if (!(q >= 1.0)) throw DomainError("time exponent q must be >= 1");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("time weight alpha must be >= 0");
}

DyadicFilterBank::DyadicFilterBank(const GridSpec& spec) : grid_(SpectralGrid::of(spec)) {
  j_min_ = static_cast<int>(std::floor(std::log2(grid_->min_nonzero_modulus())));
  j_max_ = static_cast<int>(std::ceil(std::log2(grid_->max_modulus())));
  const Eigen::ArrayXd& mod = grid_->modulus();
  for (int j = j_min_; j <= j_max_; ++j) {
    const double scale = std::ldexp(1.0, -j);
    weights_.push_back(mod.unaryExpr([scale](double r) { return r > 0 ? phi_hat(scale * r) : 0.0; }));
  }
}

const Eigen::ArrayXd& DyadicFilterBank::weights(int j) const {
  if (j < j_min_ || j > j_max_) throw DomainError("band index outside the grid's dyadic range");
  return weights_[static_cast<std::size_t>(j - j_min_)];
}

double DyadicFilterBank::partition_residual() const {
  Eigen::ArrayXd sum = Eigen::ArrayXd::Zero(grid_->spectrum_size());
  for (const auto& w : weights_) sum += w;
  double r = 0.0;
  const Eigen::ArrayXd& mod = grid_->modulus();
  for (Eigen::Index i = 0; i < sum.size(); ++i)
    if (mod[i] > 0) r = std::max(r, std::abs(sum[i] - 1.0));
  return r;
}

std::shared_ptr<const DyadicFilterBank> build_filter_bank(const GridSpec& spec) {
  using Key = std::tuple<int, double, double, int, int, double, double>;
  static std::mutex m;
  static std::map<Key, std::shared_ptr<const DyadicFilterBank>> cache;
  const Key key{spec.n, spec.L, spec.H, spec.m_tangential, spec.m_normal, spec.dt, spec.T};
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto b = std::make_shared<const DyadicFilterBank>(spec);
  cache.emplace(key, b);
  return b;
}

ScalarField lp_project(const ScalarField& full, int j, const DyadicFilterBank& bank) {
  if (full.slab() != Slab::Full) throw StructuralError("band projection acts on doubled-torus fields");
  const SpectralGrid& g = bank.grid();
  Spectrum s = g.forward(full);
  s *= bank.weights(j);
  return g.inverse(s);
}

VectorField lp_project(const VectorField& full, int j, const DyadicFilterBank& bank) {
  std::vector<ScalarField> c;
  for (int i = 0; i < full.dim(); ++i) c.push_back(lp_project(full[i], j, bank));
  return VectorField(std::move(c));
}

std::vector<double> band_norms(std::span<const Spectrum> comps, double p, const DyadicFilterBank& bank) {
  if (!(p >= 1.0)) throw DomainError("Lebesgue exponent must satisfy p >= 1");
  const SpectralGrid& g = bank.grid();
  const GridSpec& spec = g.spec();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(bank.band_count()));
  if (p == 2.0) {
    const double N = g.full_points();
    const double scale = g.torus_volume() / (N * N);
    Eigen::ArrayXd power = Eigen::ArrayXd::Zero(g.spectrum_size());
    for (const auto& c : comps) power += c.abs2();
    power *= g.hermitian_weight();
    for (int j = bank.j_min(); j <= bank.j_max(); ++j)
      out.push_back(std::sqrt(scale * (bank.weights(j).square() * power).sum()));
    return out;
  }
  for (int j = bank.j_min(); j <= bank.j_max(); ++j) {
    const Eigen::ArrayXd& w = bank.weights(j);
    if (comps.size() == 1) {
      out.push_back(lp_norm(g.inverse(comps[0] * w), p));
      continue;
    }
    Eigen::ArrayXd m2 = Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(spec.size(Slab::Full)));
    for (const auto& c : comps) m2 += g.inverse(c * w).values().square();
    out.push_back(lp_norm(ScalarField(spec, Slab::Full, m2.sqrt()), p));
  }
  return out;
}

double combine_bands(std::span<const double> bands, int j_min, const BesovIndex& idx) {
  if (std::isinf(idx.q)) {
    double m = 0.0;
    for (std::size_t k = 0; k < bands.size(); ++k)
      m = std::max(m, std::exp2(idx.s * (j_min + static_cast<int>(k))) * bands[k]);
    return m;
  }
  double s = 0.0;
  for (std::size_t k = 0; k < bands.size(); ++k)
    s += std::pow(std::exp2(idx.s * (j_min + static_cast<int>(k))) * bands[k], idx.q);
  return std::pow(s, 1.0 / idx.q);
}

double besov_norm(std::span<const Spectrum> comps, const BesovIndex& idx, const DyadicFilterBank& bank) {
  idx.validate();
  const auto bands = band_norms(comps, idx.p, bank);
  return combine_bands(bands, bank.j_min(), idx);
}

double besov_norm(const ScalarField& full, const BesovIndex& idx, const DyadicFilterBank& bank) {
  if (full.slab() != Slab::Full) throw StructuralError("whole-space Besov norm needs a doubled-torus field");
  const Spectrum s = bank.grid().forward(full);
  return besov_norm(std::span<const Spectrum>(&s, 1), idx, bank);
}

double besov_norm(const VectorField& full, const BesovIndex& idx, const DyadicFilterBank& bank) {
  if (full.slab() != Slab::Full) throw StructuralError("whole-space Besov norm needs a doubled-torus field");
  std::vector<Spectrum> s;
  for (int i = 0; i < full.dim(); ++i) s.push_back(bank.grid().forward(full[i]));
  return besov_norm(s, idx, bank);
}

bool zero_extension_reliable(const BesovIndex& idx) {
  const double lo = -1.0 / idx.p;
  const double hi = 1.0 - 1.0 / idx.p;
  return idx.s > lo && idx.s < hi;
}

HalfSpaceNorm besov_norm_halfspace(const ScalarField& half, const BesovIndex& idx,
                                   const DyadicFilterBank& bank) {
  if (half.slab() != Slab::Half) throw StructuralError("half-space Besov norm needs a half-slab field");
  return {besov_norm(zero_extend(half), idx, bank), zero_extension_reliable(idx)};
}

HalfSpaceNorm besov_norm_halfspace(const VectorField& half, const BesovIndex& idx,
                                   const DyadicFilterBank& bank) {
  if (half.slab() != Slab::Half) throw StructuralError("half-space Besov norm needs a half-slab field");
  return {besov_norm(zero_extend(half), idx, bank), zero_extension_reliable(idx)};
}

double weighted_bochner_norm(std::span<const double> norms, double dt, const WeightedIndex& w) {
  w.validate();
  if (!(dt > 0)) throw DomainError("time step must be positive");
  double acc = 0.0;
  const std::size_t K = norms.size();
  for (std::size_t k = 0; k < K; ++k) {
    if (norms[k] < 0) throw DomainError("norm samples must be non-negative");
    const double t = static_cast<double>(k) * dt;
    if (std::isinf(w.q)) {
      acc = std::max(acc, std::pow(t, w.alpha) * norms[k]);
      continue;
    }
    const double weight = (k == 0 || k + 1 == K) ? 0.5 * dt : dt;
    acc += weight * std::pow(t, w.alpha * w.q) * std::pow(norms[k], w.q);
  }
  if (std::isinf(w.q)) return acc;
  return K < 2 ? 0.0 : std::pow(acc, 1.0 / w.q);
}

double weighted_bochner_norm(std::span<const double> times, std::span<const double> norms,
                             const WeightedIndex& w) {
  w.validate();
  if (times.size() != norms.size()) throw StructuralError("time and norm samples differ in length");
  double acc = 0.0;
  for (std::size_t k = 0; k < norms.size(); ++k) {
    if (norms[k] < 0) throw DomainError("norm samples must be non-negative");
    if (k > 0 && !(times[k] > times[k - 1])) throw DomainError("time grid must increase");
    if (std::isinf(w.q)) {
      acc = std::max(acc, std::pow(times[k], w.alpha) * norms[k]);
      continue;
    }
    if (k == 0) continue;
    const double a = std::pow(times[k - 1], w.alpha * w.q) * std::pow(norms[k - 1], w.q);
    const double b = std::pow(times[k], w.alpha * w.q) * std::pow(norms[k], w.q);
    acc += 0.5 * (times[k] - times[k - 1]) * (a + b);
  }
  return std::isinf(w.q) ? acc : std::pow(acc, 1.0 / w.q);
}

std::vector<double> running_bochner_norm(std::span<const double> norms, double dt, const WeightedIndex& w) {
  w.validate();
  std::vector<double> out(norms.size(), 0.0);
  double acc = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < norms.size(); ++k) {
    const double t = static_cast<double>(k) * dt;
    if (std::isinf(w.q)) {
      acc = std::max(acc, std::pow(t, w.alpha) * norms[k]);
      out[k] = acc;
      continue;
    }
    const double cur = std::pow(t, w.alpha * w.q) * std::pow(norms[k], w.q);
    if (k > 0) acc += 0.5 * dt * (prev + cur);
    prev = cur;
    out[k] = std::pow(acc, 1.0 / w.q);
  }
  return out;
}

}  // namespace sns
