#include "tfhx/radial_grid.hpp"

#include <cmath>
#include <stdexcept>

#include "tfhx/spline.hpp"

namespace tfhx {

RadialGrid RadialGrid::logarithmic(double r_min, double r_max, std::size_t n) {
    if (!(r_min > 0.0) || !(r_max > r_min) || n < 4)
        throw std::invalid_argument("RadialGrid::logarithmic: bad parameters");
    RadialGrid g;
    g.stretch = "log";
    g.nodes.resize(n);
    double l0 = std::log(r_min), l1 = std::log(r_max);
    for (std::size_t i = 0; i < n; ++i)
        g.nodes[i] = std::exp(l0 + (l1 - l0) * double(i) / double(n - 1));
    g.nodes.front() = r_min;
    g.nodes.back() = r_max;
    g.w_dr = spline_weights(g.nodes, 0);
    g.w_rdr = spline_weights(g.nodes, 1);
    g.w_r2dr = spline_weights(g.nodes, 2);
    return g;
}

RadialGrid RadialGrid::uniform_r2(double r_max, std::size_t n) {
    if (!(r_max > 0.0) || n < 4) throw std::invalid_argument("RadialGrid::uniform_r2: bad parameters");
    RadialGrid g;
    g.stretch = "uniform-r2";
    // geometric head below the first uniform-in-r^2 node keeps the kernel
    // quadrature honest near the origin
    double first = r_max * std::sqrt(1.0 / double(n));
    const std::size_t n_head = 24;
    for (std::size_t k = 0; k < n_head; ++k)
        g.nodes.push_back(first * std::pow(1.0 / 48.0, double(n_head - k) / double(n_head)));
    for (std::size_t i = 0; i < n; ++i) {
        double frac = double(i + 1) / double(n);
        g.nodes.push_back(r_max * std::sqrt(frac));
    }
    g.w_dr = spline_weights(g.nodes, 0);
    g.w_rdr = spline_weights(g.nodes, 1);
    g.w_r2dr = spline_weights(g.nodes, 2);
    return g;
}

} // namespace tfhx
