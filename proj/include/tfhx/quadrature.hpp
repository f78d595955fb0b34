#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "tfhx/common.hpp"

namespace tfhx {

/// Tolerances and budgets shared by the deterministic and Monte Carlo integrators.
/// Identical spec + identical integrand gives a bit-identical result.
struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    std::uint64_t max_evals = 200000;
    std::uint64_t mc_samples = 100000;
    std::uint64_t seed = 0;

    void validate() const {
        if (!(rel_tol > 0.0)) throw std::invalid_argument("QuadratureSpec: rel_tol must be > 0");
        if (!(abs_tol >= 0.0)) throw std::invalid_argument("QuadratureSpec: abs_tol must be >= 0");
        if (max_evals < 1) throw std::invalid_argument("QuadratureSpec: max_evals must be >= 1");
        if (mc_samples < 1) throw std::invalid_argument("QuadratureSpec: mc_samples must be >= 1");
    }
};

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::uint64_t evals = 0;
    bool converged = false;
};

/// Declared endpoint behavior. `log_singular` covers ln(x-a)-type endpoints,
/// `power_singular` covers (x-a)^(-alpha) with alpha < 1; both are absorbed by
/// a polynomial substitution so the adaptive core never sees the blow-up.
enum class Endpoint { regular, log_singular, power_singular };

struct IntegrandOptions {
    Endpoint left = Endpoint::regular;
    Endpoint right = Endpoint::regular;
    double left_power = 0.5;  // alpha for power_singular
    double right_power = 0.5;
};

constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Adaptive Gauss-Kronrod integration of f over (a,b); b may be +infinity,
/// handled by the t/(1-t) transform. Converges when the accumulated error
/// estimate drops below max(abs_tol, rel_tol*|value|); otherwise returns
/// converged=false once max_evals is spent.
IntegralResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                            const QuadratureSpec& spec, const IntegrandOptions& opts = {});

/// Same, but with interior breakpoints (known kinks, oscillation panels).
IntegralResult integrate_1d_segmented(const std::function<double(double)>& f,
                                      const std::vector<double>& breakpoints,
                                      const QuadratureSpec& spec);

} // namespace tfhx
