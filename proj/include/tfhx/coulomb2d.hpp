#pragma once

#include <functional>
#include <vector>

#include "tfhx/linalg.hpp"
#include "tfhx/quadrature.hpp"

namespace tfhx {

/// Kernel of the in-plane Coulomb convolution for radial densities:
/// int d^2y f(|y|)/|x-y| = int_0^R ds s f(s) k(r,s),
/// k(r,s) = 4/(r+s) K(4 r s/(r+s)^2). Logarithmic at s = r.
double coulomb_kernel_2d(double r, double s);

/// Pointwise convolution of a radial profile supported on [0, support_hi],
/// with the interval split At the kernel singularity.
double coulomb_radial_2d(const std::function<double(double)>& f, double support_hi, double r,
                         const QuadratureSpec& spec);

/// Product-integration matrix for piecewise-linear nodal profiles:
/// conv(r_i) ~= sum_j M(i,j) f(x_j). The segment [0, x_0] uses constant
/// extension of f(x_0) (radial profiles have zero slope at the origin).
Matrix coulomb_matrix_2d(const std::vector<double>& nodes);

} // namespace tfhx
