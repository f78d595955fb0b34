#pragma once

#include <cmath>
#include <stdexcept>

namespace tfhx {

/// Dimension-dependent bookkeeping for the rescaled problem. Energies from
/// the solvers are in the rescaled units; `to_hartree` restores laboratory
/// hartrees for atoms (energy unit is 2 hartree, and the rescaling carries
/// Z^{3-2/d}).
struct ScalingContext {
    int d;
    double Z;
    double N;
    double q;       // N/Z
    double epsilon; // Z^{-1/d}
    double S_d;     // unit-sphere surface
    double alpha_d; // S_d / (d (2pi)^d)
    double energy_unit_hartree = 2.0;

    static ScalingContext atom(double Z, double N) {
        if (!(Z > 0.0) || !(N > 0.0)) throw std::domain_error("ScalingContext: Z, N must be > 0");
        if (N > Z) throw std::domain_error("ScalingContext: positive ions only (N <= Z)");
        return ScalingContext(3, Z, N);
    }

    static ScalingContext dot(double N) {
        if (!(N > 0.0)) throw std::domain_error("ScalingContext: N must be > 0");
        return ScalingContext(2, N, N);
    }

    /// Z-power carried by the total energy of the original problem.
    double energy_z_power() const { return 3.0 - 2.0 / double(d); }

    double to_hartree(double scaled_total) const { return scaled_total * energy_unit_hartree; }

private:
    ScalingContext(int dim, double Z_, double N_) : d(dim), Z(Z_), N(N_) {
        q = N / Z;
        epsilon = std::pow(Z, -1.0 / double(d));
        S_d = (d == 3) ? 4.0 * M_PI : 2.0 * M_PI;
        alpha_d = S_d / (double(d) * std::pow(2.0 * M_PI, double(d)));
    }
};

} // namespace tfhx
