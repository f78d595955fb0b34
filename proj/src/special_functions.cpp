#include "tfhx/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace tfhx {

double elliptic_k(double m) {
    if (!(m >= 0.0) || m >= 1.0) throw std::domain_error("elliptic_k: requires 0 <= m < 1");
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    for (int i = 0; i < 60; ++i) {
        double an = 0.5 * (a + b);
        double bn = std::sqrt(a * b);
        a = an;
        b = bn;
        if (std::abs(a - b) <= 1e-16 * a) break;
    }
    return M_PI / (2.0 * a);
}

double elliptic_e(double m) {
    if (!(m >= 0.0) || m > 1.0) throw std::domain_error("elliptic_e: requires 0 <= m <= 1");
    if (m == 1.0) return 1.0;
    // AGM with the c_n sum: E = K * (1 - sum 2^{n-1} c_n^2)
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    double csum = 0.5 * m; // 2^{-1} c_0^2 with c_0^2 = a^2 - b^2 = m
    double pow2 = 0.5;
    for (int i = 0; i < 60; ++i) {
        double c = 0.5 * (a - b);
        double an = 0.5 * (a + b);
        double bn = std::sqrt(a * b);
        a = an;
        b = bn;
        pow2 *= 2.0;
        csum += pow2 * c * c;
        if (std::abs(c) <= 1e-17 * a) break;
    }
    double K = M_PI / (2.0 * a);
    return K * (1.0 - csum);
}

double catalan() {
    // G = (pi/8) ln(2+sqrt(3)) + (3/8) sum_{n>=0} (n!)^2 / ((2n)! (2n+1)^2)
    double sum = 0.0;
    double term = 1.0; // (n!)^2/(2n)! at n=0
    for (int n = 0; n < 60; ++n) {
        sum += term / ((2.0 * n + 1.0) * (2.0 * n + 1.0));
        term *= (n + 1.0) / (2.0 * (2.0 * n + 1.0)); // ratio to next n
        if (term < 1e-18) break;
    }
    return M_PI / 8.0 * std::log(2.0 + std::sqrt(3.0)) + 3.0 / 8.0 * sum;
}

double zeta3() {
    // direct sum with Euler-Maclaurin tail: sum_{n>N} n^-3 ~ 1/(2N^2) - 1/(2N^3) + 1/(4N^4)
    const int N = 20000;
    double s = 0.0;
    for (int n = N; n >= 1; --n) s += 1.0 / (double(n) * n * n);
    double Nd = N;
    s += 0.5 / (Nd * Nd) - 0.5 / (Nd * Nd * Nd) + 0.25 / (Nd * Nd * Nd * Nd);
    return s;
}

namespace {

// returns {S_{n_terms}, S_{n_terms-1}} of the outer series
std::pair<double, double> gamma_partials(std::uint64_t n_terms) {
    double inner = 0.0;
    double partial = 0.0;
    double prev_partial = 0.0;
    for (std::uint64_t n = 0; n < n_terms; ++n) {
        double sgn_m = (n % 2 == 0) ? 1.0 : -1.0;
        inner += sgn_m / (2.0 * double(n) + 1.0);
        double np1 = double(n) + 1.0;
        double term = ((n % 2 == 0) ? 1.0 : -1.0) / (np1 * np1 * np1) * inner;
        prev_partial = partial;
        partial += term;
    }
    return {partial, prev_partial};
}

} // namespace

double gamma_series_partial(std::uint64_t n_terms) {
    if (n_terms < 1) throw std::domain_error("gamma_series_partial: n_terms must be >= 1");
    return gamma_partials(n_terms).first;
}

double gamma_series(std::uint64_t n_terms) {
    if (n_terms < 2) throw std::domain_error("gamma_series: n_terms must be >= 2");
    auto [s, sp] = gamma_partials(n_terms);
    return 0.5 * (s + sp);
}

} // namespace tfhx
