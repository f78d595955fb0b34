#include "tfhx/coulomb2d.hpp"

#include <cmath>
#include <stdexcept>

#include "tfhx/special_functions.hpp"

namespace tfhx {
namespace {

constexpr double kGx16[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                             0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                             0.9445750230732326, 0.9894009349916499};
constexpr double kGw16[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                             0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                             0.0622535239386479, 0.0271524594117541};

template <typename F>
double gauss16(const F& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 8; ++i) {
        double dx = half * kGx16[i];
        acc += kGw16[i] * (f(mid - dx) + f(mid + dx));
    }
    return acc * half;
}

// integral of g over [r, c] (or [c, r]) where g has a log endpoint at s = r,
// absorbed by s = r + (c - r) u^3
template <typename G>
double gauss_log_endpoint(const G& g, double r, double c) {
    double len = c - r;
    auto h = [&](double u) {
        double u2 = u * u;
        return g(r + len * u2 * u) * 3.0 * u2 * len;
    };
    return gauss16(h, 0.0, 1.0);
}

} // namespace

double coulomb_kernel_2d(double r, double s) {
    if (r < 0.0 || s < 0.0) throw std::domain_error("coulomb_kernel_2d: negative radius");
    double sum = r + s;
    if (sum == 0.0) return 0.0;
    double m = 4.0 * r * s / (sum * sum);
    if (m >= 1.0) m = 1.0 - 1e-16; // s == r roundoff guard; the caller splits there
    return 4.0 / sum * elliptic_k(m);
}

double coulomb_radial_2d(const std::function<double(double)>& f, double support_hi, double r,
                         const QuadratureSpec& spec) {
    if (r < 0.0) throw std::domain_error("coulomb_radial_2d: negative radius");
    if (!(support_hi > 0.0)) return 0.0;
    auto g = [&](double s) { return s * f(s) * coulomb_kernel_2d(r, s); };
    if (r > 0.0 && r < support_hi) {
        IntegrandOptions right_log, left_log;
        right_log.right = Endpoint::log_singular;
        left_log.left = Endpoint::log_singular;
        QuadratureSpec half = spec;
        half.abs_tol = 0.5 * spec.abs_tol;
        IntegralResult a = integrate_1d(g, 0.0, r, half, right_log);
        IntegralResult b = integrate_1d(g, r, support_hi, half, left_log);
        return a.value + b.value;
    }
    if (r > 0.0 && r == support_hi) {
        IntegrandOptions right_log;
        right_log.right = Endpoint::log_singular;
        return integrate_1d(g, 0.0, r, spec, right_log).value;
    }
    return integrate_1d(g, 0.0, support_hi, spec).value;
}

Matrix coulomb_matrix_2d(const std::vector<double>& nodes) {
    const std::size_t n = nodes.size();
    if (n < 2) throw std::invalid_argument("coulomb_matrix_2d: need >= 2 nodes");
    Matrix M(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = nodes[i];
        // leading segment [0, x0]: constant extension of f(x0)
        {
            double x0 = nodes[0];
            auto g = [&](double s) { return s * coulomb_kernel_2d(r, s); };
            double v;
            if (r > 0.0 && r < x0)
                v = gauss_log_endpoint(g, r, 0.0) * -1.0 + gauss_log_endpoint(g, r, x0);
            else if (r == x0)
                v = -gauss_log_endpoint(g, r, 0.0);
            else
                v = gauss16(g, 0.0, x0);
            M(i, 0) += v;
        }
        for (std::size_t j = 0; j + 1 < n; ++j) {
            const double a = nodes[j], b = nodes[j + 1];
            const double w = b - a;
            auto hat_lo = [&](double s) {
                return s * coulomb_kernel_2d(r, s) * (b - s) / w;
            };
            auto hat_hi = [&](double s) {
                return s * coulomb_kernel_2d(r, s) * (s - a) / w;
            };
            double v_lo, v_hi;
            if (r > a && r < b) {
                v_lo = -gauss_log_endpoint(hat_lo, r, a) + gauss_log_endpoint(hat_lo, r, b);
                v_hi = -gauss_log_endpoint(hat_hi, r, a) + gauss_log_endpoint(hat_hi, r, b);
            } else if (r == a || r == b) {
                double c = (r == a) ? b : a;
                double sgn = (r == a) ? 1.0 : -1.0;
                v_lo = sgn * gauss_log_endpoint(hat_lo, r, c);
                v_hi = sgn * gauss_log_endpoint(hat_hi, r, c);
            } else {
                // near-singular cells get a split midpoint for accuracy
                double dist = (r < a) ? a - r : r - b;
                if (dist < 2.0 * w) {
                    double mid = 0.5 * (a + b);
                    v_lo = gauss16(hat_lo, a, mid) + gauss16(hat_lo, mid, b);
                    v_hi = gauss16(hat_hi, a, mid) + gauss16(hat_hi, mid, b);
                } else {
                    v_lo = gauss16(hat_lo, a, b);
                    v_hi = gauss16(hat_hi, a, b);
                }
            }
            M(i, j) += v_lo;
            M(i, j + 1) += v_hi;
        }
    }
    return M;
}

} // namespace tfhx
