#include "sns/helmholtz.hpp"

#include "sns/calculus.hpp"
#include "sns/potential.hpp"
#include "sns/spectral.hpp"

namespace sns {

ProjectedTensor project_tensor(const TensorField& F) {
  F.check_admissible();
  const int n = F.dim();
  const int N = n - 1;
  auto g = SpectralGrid::of(F.spec());
  auto m = [&](int a, int b) { return hessian_multiplier(*g, a, b); };

  std::vector<Spectrum> even(static_cast<std::size_t>(n * n)), odd(static_cast<std::size_t>(n));
  auto E = [&](int k, int l) -> const Spectrum& {
    Spectrum& s = even[static_cast<std::size_t>(k * n + l)];
    if (s.size() == 0) s = g->forward(reflect(F(k, l)));
    return s;
  };
  auto O = [&](int b) -> const Spectrum& {
    Spectrum& s = odd[static_cast<std::size_t>(b)];
    if (s.size() == 0) s = g->forward(odd_extend(F(b, N)));
    return s;
  };

  TensorField out(F.spec(), Slab::Half, false);
  for (int l = 0; l < n; ++l) {
    out(N, l) = F(N, l);
    if (l == N) out(N, l) -= F(N, N);
  }
  for (int b = 0; b < N; ++b) {
    for (int c = 0; c < N; ++c) {
      Spectrum acc = m(c, b) * E(N, N);
      for (int q = 0; q < N; ++q) acc -= m(c, q) * E(b, q);
      acc -= 2.0 * m(c, N) * O(b);
      ScalarField v = restrict_to_half(g->inverse(acc));
      v += F(b, c);
      if (b == c) v -= F(N, N);
      out(b, c) = std::move(v);
    }
    Spectrum acc = m(b, N) * E(N, N);
    for (int c = 0; c < N; ++c) {
      acc -= m(c, N) * E(b, c);
      acc += 2.0 * m(c, c) * O(b);
    }
    ScalarField v = restrict_to_half(g->inverse(acc));
    v -= F(b, N);
    out(b, N) = std::move(v);
  }
  return {std::move(out)};
}

VectorField helmholtz_apply(const TensorField& F) { return divergence(project_tensor(F).fprime); }

ProjectionBoundReport verify_projection_bound(std::span<const TensorField> corpus, double p) {
  ProjectionBoundReport rep;
  for (const auto& F : corpus) {
    const double den = lp_norm(F, p);
    const double r = den > 0 ? lp_norm(project_tensor(F).fprime, p) / den : 0.0;
    rep.ratios.push_back(r);
    rep.max_ratio = std::max(rep.max_ratio, r);
  }
  return rep;
}

}  // namespace sns
