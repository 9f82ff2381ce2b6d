#ifndef SNS_CALCULUS_HPP
#define SNS_CALCULUS_HPP

#include "sns/grid.hpp"
#include "sns/spectral.hpp"

namespace sns {

// Spectral derivative along a tangential axis, row by row.
ScalarField tangential_derivative(const ScalarField& f, int axis, int order = 1);

// Fourth-order differences in x_n: one-sided stencils at x_n = 0 and H on
// the half slab, periodic on the doubled torus.
ScalarField normal_derivative(const ScalarField& f, int order = 1);

ScalarField partial(const ScalarField& f, int axis);
VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& v);
// (div F)_m = sum_k d_k F_{km}.
VectorField divergence(const TensorField& F);
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& v);

// Divergence of the zero extension computed spectrally on the doubled torus.
ScalarField spectral_divergence(const VectorField& half);

// Spectral partial derivative of a doubled-torus field.
ScalarField spectral_partial(const ScalarField& full, int axis);

}  // namespace sns

#endif
