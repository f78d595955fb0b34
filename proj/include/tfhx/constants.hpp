#pragma once

#include <string>
#include <vector>

#include "tfhx/quadrature.hpp"

namespace tfhx {

/// A universal constant computed twice: closed form and independent numerics.
/// For Monte Carlo routes std_error carries the standard error; deterministic
/// routes leave it NaN. `closed_form` is NaN for the one constant the source
/// material leaves unevaluated (the k-integral C), where `numeric` vs
/// `numeric_alt` cross-method agreement substitutes for ground truth.
struct ConstantReport {
    std::string name;
    double closed_form = 0.0;
    double numeric = 0.0;
    double rel_error = 0.0;
    double std_error = std::numeric_limits<double>::quiet_NaN();
    double numeric_alt = std::numeric_limits<double>::quiet_NaN();
    std::string method;
    QuadratureSpec spec;
    bool flagged = false;

    void finalize(); // fills rel_error from closed_form/numeric
};

/// Inner pair-bubble overlap alpha_t(k;1) of the I_2 integrand (exposed for
/// the large-k/t=0 checks: the constraints decouple and it tends to pi).
double pair_bubble_alpha(double k, double t);

/// I_2 = int_0^inf dt int d^2k k^-2 alpha_t^2(k;1) against 2 pi^3 (1 - ln 2).
ConstantReport i2_report(const QuadratureSpec& spec);

/// Universal dot constant (1 - ln 2)/2, numerically chained through I_2.
/// Pass a precomputed i2 report to avoid recomputing the triple integral.
ConstantReport ec1_star_dot(const QuadratureSpec& spec, const ConstantReport* i2 = nullptr);

/// Coefficient of the atom correlation log term: (1 - ln 2)/pi^2 vs 0.03109.
ConstantReport xlog_coefficient();

/// Second-order exchange constants, d = 3 and d = 2: Monte Carlo over the
/// particle-hole constraint region vs the Onsager-type closed forms.
struct BPair {
    ConstantReport b3;
    ConstantReport b2;
};
BPair b_constants(const QuadratureSpec& spec);

/// A_d coefficient -4d/S_d^2 with the g_d(1;1) = 4/S_d quadrature check.
ConstantReport a_d_constant(int d);

/// J = int dp1 dp2 theta(1-p1^2) theta(1-p2^2)/|p1+p2| over unit disks vs 16 pi/3.
ConstantReport j_exchange(const QuadratureSpec& spec);

/// Integrand of the C constant below, exposed for the spot checks at k = 2
/// and the large-k tail.
double c_appendix_integrand(double k);

/// C = int_0^inf dk [k^2/(k^2+1) ln|(k+1)/(k-1)| - (2/k) theta(k-1)],
/// by direct split quadrature and by the k -> 1/k symmetrization.
ConstantReport c_appendix(const QuadratureSpec& spec);

/// Dot correlation constant 0.1455 vs the recombination 2/pi^2 - (G/3 - 2 gamma/pi^2)/2.
ConstantReport dot_correlation_constant();

/// Everything above in report order (for the CLI emitter).
std::vector<ConstantReport> all_constants(const QuadratureSpec& spec, bool include_slow = true);

} // namespace tfhx
