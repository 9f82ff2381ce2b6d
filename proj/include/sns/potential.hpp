#ifndef SNS_POTENTIAL_HPP
#define SNS_POTENTIAL_HPP

#include "sns/grid.hpp"
#include "sns/littlewood_paley.hpp"
#include "sns/spectral.hpp"

namespace sns {

// Fundamental solution of the Laplacian (Delta N = delta).
struct NewtonianKernel {
  int n = 2;
  double operator()(const Point& x) const;
};

// Multiplier xi_i xi_j / |xi|^2 of d_i d_j N* on the doubled torus, zero at
// the origin.
Eigen::ArrayXd hessian_multiplier(const SpectralGrid& grid, int i, int j);

// d_i d_j of the Newtonian potential of the chosen extension, restricted to
// the half slab. Zero extension gives the integral of N(x - y) f(y) over the
// half space, Mirror the one of N(x - y*) f(y); Even and Odd are their sum
// and difference.
ScalarField newtonian_hessian(const ScalarField& half, int i, int j, Extension kind);
ScalarField second_derivative_potential(const ScalarField& half, int i, int j, bool reflected);

// Largest |xi_i xi_j| / |xi|^2 over the grid: the L^2 operator norm.
double hessian_l2_constant(const SpectralGrid& grid);

struct TraceEstimate {
  double ratio = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  bool skipped = false;  // zero input
  bool reliable = true;
};

// Besov norm of the full Hessian of the potential over the Besov norm of f,
// for -1 + 1/p < s < 0.
TraceEstimate trace_estimate_check(const ScalarField& half, const BesovIndex& idx, bool reflected,
                                   const DyadicFilterBank& bank);

}  // namespace sns

#endif
