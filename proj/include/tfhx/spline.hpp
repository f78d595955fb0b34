#pragma once

#include <vector>

namespace tfhx {

/// Not-a-knot cubic spline on strictly increasing nodes. Reproduces cubics
/// exactly, which makes the derived quadrature weights exact on low-degree
/// polynomials.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y);

    double operator()(double t) const;
    double derivative(double t) const;
    double integral(double a, double b) const;

    const std::vector<double>& nodes() const { return x_; }
    const std::vector<double>& values() const { return y_; }

private:
    std::size_t locate(double t) const;
    std::vector<double> x_, y_, m_; // m_: second derivatives at nodes
};

/// Quadrature weights w such that sum_i w_i f(x_i) equals the integral of the
/// not-a-knot spline of f against the measure r^measure_power dr over
/// [x.front(), x.back()]. Exact (to roundoff) for f polynomial of degree <= 3.
std::vector<double> spline_weights(const std::vector<double>& x, int measure_power);

} // namespace tfhx
