#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tfhx/quadrature.hpp"
#include "tfhx/radial_grid.hpp"
#include "tfhx/scaling.hpp"
#include "tfhx/spline.hpp"
#include "tfhx/tf_atom.hpp" // TfEnergy

namespace tfhx {

/// Radially symmetric confinement V(r), either a power law or tabulated
/// samples (spline-interpolated, extended by its last power-law slope).
struct ConfinementSpec {
    enum class Kind { power_law, tabulated };
    Kind kind = Kind::power_law;
    double exponent = 2.0;
    double strength = 1.0;
    std::vector<double> r_samples, v_samples;
    std::string description = "r^2";

    static ConfinementSpec power_law(double p, double strength = 1.0);
    static ConfinementSpec tabulated(std::vector<double> r, std::vector<double> v,
                                     std::string description = "tabulated");

    double operator()(double r) const;
    double derivative(double r) const;
    void validate() const; // throws std::domain_error if not confining
private:
    CubicSpline table_;
    double tail_power_ = 2.0, tail_coeff_ = 1.0;
};

/// Self-consistent 2D dot solution in rescaled units; mu_plus has compact
/// support [0, R] and is exactly zero beyond it.
struct TFDotSolution {
    ConfinementSpec confinement;
    double mu_global = 0.0;
    double support_radius = 0.0;
    RadialGrid grid;
    std::vector<double> mu_plus;  // on grid, clamped to 0 beyond R
    std::vector<double> mu_of_r;  // full local chemical potential on grid
    double W_prime_at_R = 0.0;    // radial derivative of W = V + induced at R
    double residual = 0.0;

    CubicSpline mu_spline;        // smooth interpolant of mu_of_r
    double mu_at(double r) const;
    double mu_plus_at(double r) const;
};

struct DotSolverOptions {
    std::size_t grid_n = 1200;
    double mixing = 0.3;
    std::size_t max_outer = 64;     // bisection steps on mu
    std::size_t max_inner = 4000;   // damped fixed-point sweeps
    double r_max = 0.0;             // 0: choose from the confinement automatically
};

/// Damped fixed-point solve of mu(x) = mu - V - (1/2pi) conv(mu_plus) with an
/// outer bisection on mu enforcing (1/2pi) int mu_plus d^2x = 1.
TFDotSolution solve_tf_dot_radial(const ConfinementSpec& conf, double tol = 1e-5,
                                  const DotSolverOptions& opts = {});

/// Semiclassical integrated density of states for the dot.
double integrated_dos(const TFDotSolution& sol, const ScalingContext& ctx, double e);

/// Dot Thomas-Fermi energy E_tf = (1/2)[mu + (1/2pi) int V mu_plus d^2x]
/// (per-particle scaled units; the N^2 prefactor is applied at assembly).
double tf_dot_energy(const TFDotSolution& sol, double tol = 1e-4);

} // namespace tfhx
