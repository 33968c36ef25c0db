#pragma once

#include <cstddef>
#include <vector>

namespace berrylink::numeric {

// Gauss-Legendre nodes/weights on (-1, 1), Golub-Welsch via a symmetric
// tridiagonal eigensolve.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule gauss_legendre(int n);

// Gauss-Legendre mapped to (a, b).
GaussRule gauss_legendre(int n, double a, double b);

// Fornberg finite-difference weights: for derivative order m at point x0
// given stencil nodes x (all distinct). Returns weights w such that
// f^(m)(x0) ~ sum_i w[i] f(x[i]).
std::vector<double> fd_weights(double x0, const std::vector<double>& x, int m);

// Dense differentiation matrix on an arbitrary 1-D node set using moving
// stencils of `stencil` nearest nodes (local polynomial interpolation).
// D(i,j) so that (D f)_i ~ f^(m)(x_i).
std::vector<double> fd_matrix(const std::vector<double>& x, int m, int stencil);

// Reduce an angle to [0, 2*pi).
double wrap_angle(double a);

}  // namespace berrylink::numeric
