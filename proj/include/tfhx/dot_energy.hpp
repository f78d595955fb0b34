#pragma once

#include <vector>

#include "tfhx/quadrature.hpp"
#include "tfhx/tf_dot.hpp"

namespace tfhx {

/// Solution of the linear screening equation
/// a(x) = 1 - (1/2pi) int a(y) theta(mu(y)) / |x-y| d^2y
/// on the dot support, discretized by a panel-Chebyshev Nystrom rule
/// (panels geometrically graded into the support edge).
struct ScreeningProfile {
    double support_radius = 0.0;
    std::vector<double> panel_edges; // ascending, panel_edges.front()=0, back()=R
    std::size_t degree = 12;         // Chebyshev-Gauss points per panel
    std::vector<double> nodes;       // all collocation radii
    std::vector<double> a_values;    // solution at the nodes
    double residual = 0.0;           // sup defect at nodes and off-grid probes
    double cond_proxy = 0.0;

    /// interpolated a(r) on [0,R] (panel barycentric evaluation)
    double eval(double r) const;
};

/// refine_level > 0 halves the bulk panels and deepens the edge grading by
/// one level per step (used by the node-doubling stability checks).
ScreeningProfile solve_screening(const TFDotSolution& sol, double tol = 1e-8,
                                 int refine_level = 0);

/// a(x) anywhere: interpolation on the support, direct substitution into the
/// equation outside it (the support values determine the exterior).
double screening_at(const ScreeningProfile& a, double r);

/// Delta correction (1/pi^3) [int mu+^{1/2} a d^2x]^2 / int a theta(mu) d^2x.
double dot_delta_term(const TFDotSolution& sol, const ScreeningProfile& a);

/// (1/24pi) int Laplacian(W) theta(mu) d^2x via the boundary flux,
/// = R W'(R) / 12.
double dot_laplacian_term(const TFDotSolution& sol);

/// Same quantity assembled from pointwise Laplacian samples over the support
/// (independent of the flux route; used to cross-check within 1%).
double dot_laplacian_term_area(const TFDotSolution& sol);

struct DotCorrelation {
    double corr_const;    // 0.1534 + 0.1455
    double corr_integral; // (1/2pi^4) int int mu+^{1/2} mu+^{1/2} / |x-y|
};
DotCorrelation dot_correlation(const TFDotSolution& sol, const QuadratureSpec& spec);

/// Term-by-term smooth HX + correlation energy of the dot. All coefficients
/// are stored without their N powers; total(N) assembles them exactly.
struct DotEnergyBreakdown {
    double e_tf = 0.0;           // N^2 coefficient
    double exchange_term = 0.0;  // N^{3/2} coefficient, (2/(3pi^2)) int mu+^{3/2}
    double exchange_term_via_j = 0.0; // same via (J/(2pi)^3), J = 16pi/3
    double laplacian_term = 0.0; // N coefficient
    double delta_term = 0.0;     // N coefficient
    double corr_const = 0.0;     // N coefficient (universal)
    double corr_integral = 0.0;  // N coefficient (profile dependent)
    double n_electrons = 0.0;

    double total(double N) const {
        return N * N * e_tf + std::pow(N, 1.5) * exchange_term +
               N * (laplacian_term + delta_term) - N * (corr_const - corr_integral);
    }
};

DotEnergyBreakdown dot_total_energy(double N, const ConfinementSpec& conf,
                                    const QuadratureSpec& spec, double tol = 1e-6,
                                    const DotSolverOptions& opts = {});

} // namespace tfhx
