#ifndef SNS_SUITE_SUPPORT_HPP
#define SNS_SUITE_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sns/grid.hpp"

namespace sns::detail {

// Independent stream per suite and purpose.
inline std::mt19937_64 suite_rng(std::uint64_t seed, const std::string& purpose) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(fnv1a(purpose.data(), purpose.size()))};
  return std::mt19937_64(seq);
}

inline std::uint64_t derived_seed(std::uint64_t seed, const std::string& purpose) {
  auto rng = suite_rng(seed, purpose);
  return rng();
}

// Rows with x_n in [lo H, hi H] of a half-slab field.
inline double band_l2(const ScalarField& f, double lo, double hi) {
  const GridSpec& s = f.spec();
  double sum = 0.0;
  for (int r = 0; r < f.rows(); ++r) {
    const double x = s.normal_coordinate(Slab::Half, r);
    if (x < lo * s.H || x > hi * s.H) continue;
    sum += f.row(r).square().sum();
  }
  return std::sqrt(sum);
}

inline double band_l2(const VectorField& v, double lo, double hi) {
  double sum = 0.0;
  for (const auto& c : v.components()) sum += std::pow(band_l2(c, lo, hi), 2);
  return std::sqrt(sum);
}

inline double max_abs(const ScalarField& f) { return f.values().abs().maxCoeff(); }

inline double max_abs(const VectorField& v) {
  double m = 0.0;
  for (const auto& c : v.components()) m = std::max(m, max_abs(c));
  return m;
}

inline double relative_l2(const ScalarField& a, const ScalarField& b) {
  const double den = std::sqrt(b.values().square().sum());
  return den > 0 ? std::sqrt((a.values() - b.values()).square().sum()) / den : 0.0;
}

inline double relative_l2(const VectorField& a, const VectorField& b) {
  double num = 0.0, den = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    num += (a[i].values() - b[i].values()).square().sum();
    den += b[i].values().square().sum();
  }
  return den > 0 ? std::sqrt(num / den) : 0.0;
}

inline double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

}  // namespace sns::detail

#endif
