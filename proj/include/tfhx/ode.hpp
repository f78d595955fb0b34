#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace tfhx {

/// One recorded point of a two-component trajectory.
struct OdePoint {
    double t;
    double y0;
    double y1;
};

struct OdeOptions {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    double initial_step = 1e-8;
    double max_step = 0.05;
    std::uint64_t max_steps = 2000000;
};

/// Adaptive Cash-Karp RK45 for a 2-component system y' = f(t, y).
/// Integrates from t0 to t1 (either direction); records every accepted step.
/// `stop` may end integration early (checked after each accepted step).
std::vector<OdePoint> integrate_ode2(
    const std::function<std::array<double, 2>(double, const std::array<double, 2>&)>& f,
    double t0, double t1, std::array<double, 2> y0, const OdeOptions& opts,
    const std::function<bool(double, const std::array<double, 2>&)>& stop = nullptr);

} // namespace tfhx
