#pragma once

#include <string>
#include <vector>

namespace tfhx {

/// Radial nodes plus spline-based quadrature weights for the measures
/// dr, r dr, r^2 dr. Weights integrate the not-a-knot interpolant, so they
/// are exact on polynomials through degree 3.
struct RadialGrid {
    std::vector<double> nodes;
    std::vector<double> w_dr;  // integral f(r) dr
    std::vector<double> w_rdr; // integral f(r) r dr      (2D radial measure / 2pi)
    std::vector<double> w_r2dr;// integral f(r) r^2 dr    (3D radial measure / 4pi)
    std::string stretch;

    static RadialGrid logarithmic(double r_min, double r_max, std::size_t n);
    static RadialGrid uniform_r2(double r_max, std::size_t n); // nodes uniform in r^2
    std::size_t size() const { return nodes.size(); }
};

} // namespace tfhx
