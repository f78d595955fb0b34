#pragma once

#include <memory>
#include <vector>

#include "tfhx/quadrature.hpp"
#include "tfhx/radial_grid.hpp"
#include "tfhx/scaling.hpp"
#include "tfhx/spline.hpp"

namespace tfhx {

/// Self-consistent atomic solution in rescaled units. The local chemical
/// potential is carried as mu(r) = phi(r/b)/r on the support, with phi the
/// solved screening function and b = (3 pi / 4)^(2/3); off-grid evaluation
/// goes through splines of the dense integrator trajectory.
class TFAtomSolution {
public:
    double q = 1.0;
    double mu_global = 0.0;
    RadialGrid grid;
    std::vector<double> mu_plus;
    std::vector<double> mu_plus_prime;
    double origin_coeff = 0.0;   // lim_{r->0} r mu+(r)
    double tail_coeff = 0.0;     // lim r^4 mu+(r), neutral case (extrapolated fit)
    double residual = 0.0;       // sup-norm defect of the integral self-consistency
    double support_radius = 0.0; // finite for ions, +inf for neutral
    double initial_slope = 0.0;  // -phi'(0)

    double mu_at(double r) const;       // local chemical potential (any sign)
    double mu_plus_at(double r) const;
    double mu_plus_prime_at(double r) const;

    double length_rescale() const { return b_; }

    // trajectory splines in the universal variable s = r/b
    CubicSpline phi;
    CubicSpline phi_prime;
    double s_min = 0.0, s_max = 0.0;

private:
    friend TFAtomSolution solve_tf_atom(double, const RadialGrid&, double);
    double b_ = 0.0;
};

/// Shooting solve of the universal screening ODE, mapped back to the
/// self-consistent local chemical potential. q in (0,1]; the neutral case
/// imposes mu_global = 0. Throws NonConvergence when the integral-form
/// residual cannot be brought below tol, std::domain_error for q outside (0,1].
TFAtomSolution solve_tf_atom(double q, const RadialGrid& grid, double tol = 1e-8);

/// Semiclassical integrated density of states at energy e for the atom
/// solution (see also the dot overload in tf_dot.hpp). e must not exceed
/// mu_global: above it the classically allowed region is unbounded.
double integrated_dos(const TFAtomSolution& sol, const ScalingContext& ctx, double e);

struct TfEnergy {
    double scaled;  // units of the original problem's rescaled energy
    double hartree;
};

/// Thomas-Fermi total energy of the original atom, from the solved profile.
TfEnergy tf_energy(const TFAtomSolution& sol, const ScalingContext& ctx, double tol = 1e-6);

} // namespace tfhx
