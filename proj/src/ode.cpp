#include "tfhx/ode.hpp"

#include <cmath>
#include <stdexcept>

namespace tfhx {
namespace {

constexpr double kA[6] = {0, 1.0 / 5, 3.0 / 10, 3.0 / 5, 1.0, 7.0 / 8};
constexpr double kB[6][5] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {3.0 / 10, -9.0 / 10, 6.0 / 5},
    {-11.0 / 54, 5.0 / 2, -70.0 / 27, 35.0 / 27},
    {1631.0 / 55296, 175.0 / 512, 575.0 / 13824, 44275.0 / 110592, 253.0 / 4096}};
constexpr double kC5[6] = {37.0 / 378, 0, 250.0 / 621, 125.0 / 594, 0, 512.0 / 1771};
constexpr double kC4[6] = {2825.0 / 27648, 0,           18575.0 / 48384,
                           13525.0 / 55296, 277.0 / 14336, 1.0 / 4};

} // namespace

std::vector<OdePoint> integrate_ode2(
    const std::function<std::array<double, 2>(double, const std::array<double, 2>&)>& f,
    double t0, double t1, std::array<double, 2> y, const OdeOptions& opts,
    const std::function<bool(double, const std::array<double, 2>&)>& stop) {
    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    double t = t0;
    double h = dir * std::abs(opts.initial_step);
    std::vector<OdePoint> out;
    out.push_back({t, y[0], y[1]});

    std::array<std::array<double, 2>, 6> k;
    std::uint64_t steps = 0;
    while (dir * (t1 - t) > 0.0) {
        if (++steps > opts.max_steps) throw std::runtime_error("integrate_ode2: step budget exhausted");
        if (dir * (t + h - t1) > 0.0) h = t1 - t;

        k[0] = f(t, y);
        for (int i = 1; i < 6; ++i) {
            std::array<double, 2> yi = y;
            for (int j = 0; j < i; ++j) {
                yi[0] += h * kB[i][j] * k[j][0];
                yi[1] += h * kB[i][j] * k[j][1];
            }
            k[i] = f(t + kA[i] * h, yi);
        }
        std::array<double, 2> y5 = y, y4 = y;
        for (int i = 0; i < 6; ++i) {
            y5[0] += h * kC5[i] * k[i][0];
            y5[1] += h * kC5[i] * k[i][1];
            y4[0] += h * kC4[i] * k[i][0];
            y4[1] += h * kC4[i] * k[i][1];
        }
        double sc0 = opts.abs_tol + opts.rel_tol * std::max(std::abs(y[0]), std::abs(y5[0]));
        double sc1 = opts.abs_tol + opts.rel_tol * std::max(std::abs(y[1]), std::abs(y5[1]));
        double err = std::max(std::abs(y5[0] - y4[0]) / sc0, std::abs(y5[1] - y4[1]) / sc1);
        if (err <= 1.0 || std::abs(h) <= 1e-15 * std::max(1.0, std::abs(t))) {
            t += h;
            y = y5;
            out.push_back({t, y[0], y[1]});
            if (stop && stop(t, y)) break;
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-16), -0.2);
        fac = std::min(5.0, std::max(0.1, fac));
        h *= fac;
        if (std::abs(h) > opts.max_step) h = dir * opts.max_step;
    }
    return out;
}

} // namespace tfhx
