#pragma once

#include <functional>
#include <optional>
#include <string>

#include "tfhx/quadrature.hpp"
#include "tfhx/tf_atom.hpp"

namespace tfhx {

/// Smooth Hartree-exchange expansion of the neutral atom in hartrees.
/// c7, c6, c5 are the established coefficients; c4, c3, c0 are unknown and
/// enter only when supplied by the caller.
struct AtomSmoothHX {
    double c7 = -0.7687;
    double c6 = -0.5;
    double c5 = -0.2699;
    std::optional<double> c4, c3, c0;

    struct Terms {
        double t73 = 0, t2 = 0, t53 = 0, t43 = 0, t1 = 0, tlog = 0;
        double total = 0;
    };
    Terms terms(double N) const;
};

/// Logarithmic density moment int_0^inf dr r^2 mu+^{3/2} ln mu+^{1/2} of the
/// neutral profile (0 log 0 read as 0). The tabulated correlation
/// coefficients consume -1/2 of this raw moment; see AtomCorrelationBreakdown.
double atom_A_integral(const TFAtomSolution& sol, const QuadratureSpec& spec);

/// Integration window for the oscillatory (p,t) moment below. The unwindowed
/// double integral diverges in the (t->0, p->inf) corner (the Coulomb core of
/// the profile makes g(p,t) approach a constant there), so the window is part
/// of the definition; see atom_B_integral.
struct BWindow {
    double t_min = 1.0;
    double t_max = 120.0;
    double p_min = 1e-3;
    double p_max = 60.0;
};

/// Windowed double moment int dt int dp ln(p) g^2(p,t) with
/// g(p,t) = int dr r mu+'(r) e^{-t sqrt(mu+)} [cos(pr) - sin(pr)/(pr)].
double atom_B_integral(const TFAtomSolution& sol, const QuadratureSpec& spec,
                       const BWindow& window = {});

/// Ordered double integral int_0^inf dr r int_0^r ds s^2 f(r) f(s) of a
/// radial density supported on [0, r_hi].
double atom_ec2_integral(const std::function<double(double)>& f, double r_hi,
                         const QuadratureSpec& spec);

/// Same integral over the neutral profile.
double atom_ec2_integral(const TFAtomSolution& sol, const QuadratureSpec& spec);

/// The linear-in-epsilon correlation combination and its universal bracket.
struct XlinParts {
    double bracket;        // 23/6 - pi^2/4 + (8/3) ln2 - 2G(1-ln2) - 4 ln^2 2
    double const_scaled;   // bracket/(2 pi^2), the 0.03700 check
    double value;          // full combination for the supplied A, B
};
XlinParts atom_xlin(double a_value, double b_value);

/// Correlation bookkeeping for a neutral-profile atom. Scaled-unit fields use
/// the tabulated coefficients verbatim; hartree terms are per electron and are
/// contributions to the *negative* of the correlation energy (reporting
/// convention of the data comparison).
struct AtomCorrelationBreakdown {
    double log_coeff = 0.03109;
    double const_base = 0.03700;
    double A_value = 0.0;  // tabulated convention: -raw/2
    double A_raw = 0.0;    // literal logarithmic moment
    double B_value = 0.0;  // windowed moment, sign per convention string
    double x_a = 0.0;      // 0.01979 * A_value
    double x_b = 0.0;      // 0.01027 * B_value
    double ec2_const = 0.06390;
    double ec2_integral = 0.0; // literal double integral
    double x_unknown = 0.0;

    // per-electron hartree contributions to -E_c (neutral case)
    double h_log_per_lnN13 = 0.0; // coefficient of ln N^{1/3}
    double h_log_per_lnN = 0.0;   // same contribution expressed per ln N
    double h_const_universal = 0.0;
    double h_x_a = 0.0;
    double h_x_b = 0.0;
    double h_x_unknown = 0.0;
    double h_ec2_const = 0.0;
    double h_ec2_integral = 0.0;

    std::string sign_convention;
    double N = 0.0, Z = 0.0;
};

AtomCorrelationBreakdown atom_correlation(double N, double Z, double x_unknown,
                                          const TFAtomSolution& sol, const QuadratureSpec& spec);

} // namespace tfhx
