#pragma once

#include <cstdint>

namespace tfhx {

/// Complete elliptic integral of the first kind in the parameter convention
/// K(m) = int_0^{pi/2} dtheta / sqrt(1 - m sin^2 theta), 0 <= m < 1,
/// by arithmetic-geometric-mean iteration (relative error <= 1e-14).
double elliptic_k(double m);

/// Complete elliptic integral of the second kind E(m), same convention.
double elliptic_e(double m);

/// Catalan's constant to >= 12 significant digits.
double catalan();

/// Riemann zeta(3) to >= 12 significant digits.
double zeta3();

/// Raw partial sum of sum_n (-1)^n/(n+1)^3 * sum_{m=0}^n (-1)^m/(2m+1)
/// over the first n_terms outer terms (n_terms >= 1). Successive partial
/// sums bracket the limit once the outer series alternates (n >= 1).
double gamma_series_partial(std::uint64_t n_terms);

/// Accelerated value: average of the last two partial sums (Cesaro pair),
/// stable to 1e-8 between n_terms and 2*n_terms for n_terms >~ 100. n_terms >= 2.
double gamma_series(std::uint64_t n_terms);

} // namespace tfhx
