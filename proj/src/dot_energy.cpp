#include "tfhx/dot_energy.hpp"

#include <algorithm>
#include <cmath>

#include "tfhx/common.hpp"
#include "tfhx/coulomb2d.hpp"
#include "tfhx/linalg.hpp"

namespace tfhx {
namespace {

// Chebyshev-Gauss points (open; no duplicated panel edges) on [-1,1]
std::vector<double> cheb_gauss(std::size_t n) {
    std::vector<double> x(n);
    for (std::size_t j = 0; j < n; ++j)
        x[j] = -std::cos(M_PI * (2.0 * double(j) + 1.0) / (2.0 * double(n)));
    return x;
}

// barycentric weights for Chebyshev-Gauss nodes
std::vector<double> cheb_gauss_weights(std::size_t n) {
    std::vector<double> w(n);
    for (std::size_t j = 0; j < n; ++j) {
        double th = M_PI * (2.0 * double(j) + 1.0) / (2.0 * double(n));
        w[j] = ((n - 1 - j) % 2 == 0 ? 1.0 : -1.0) * std::sin(th);
    }
    return w;
}

struct PanelBasis {
    std::vector<double> ref_nodes; // on [-1,1]
    std::vector<double> bary;
    double lagrange(std::size_t j, double xi) const {
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < ref_nodes.size(); ++k) {
            double d = xi - ref_nodes[k];
            if (std::abs(d) < 1e-14) return (k == j) ? 1.0 : 0.0;
            double t = bary[k] / d;
            den += t;
            if (k == j) num = t;
        }
        return num / den;
    }
    double interpolate(const double* values, double xi) const {
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < ref_nodes.size(); ++k) {
            double d = xi - ref_nodes[k];
            if (std::abs(d) < 1e-14) return values[k];
            double t = bary[k] / d;
            den += t;
            num += t * values[k];
        }
        return num / den;
    }
};

constexpr double kGx16[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                             0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                             0.9445750230732326, 0.9894009349916499};
constexpr double kGw16[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                             0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                             0.0622535239386479, 0.0271524594117541};

template <typename F>
void gauss16_accumulate(const F& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < 8; ++i) {
        f(mid - half * kGx16[i], half * kGw16[i]);
        f(mid + half * kGx16[i], half * kGw16[i]);
    }
}

} // namespace

double ScreeningProfile::eval(double r) const {
    if (r < 0.0 || r > support_radius * (1.0 + 1e-12))
        throw std::domain_error("ScreeningProfile::eval: outside the support");
    r = std::min(r, support_radius);
    std::size_t np = panel_edges.size() - 1;
    std::size_t k = np - 1;
    for (std::size_t i = 0; i + 1 < panel_edges.size(); ++i) {
        if (r <= panel_edges[i + 1]) {
            k = i;
            break;
        }
    }
    double a = panel_edges[k], b = panel_edges[k + 1];
    double xi = 2.0 * (r - a) / (b - a) - 1.0;
    static thread_local PanelBasis basis;
    if (basis.ref_nodes.size() != degree) {
        basis.ref_nodes = cheb_gauss(degree);
        basis.bary = cheb_gauss_weights(degree);
    }
    return basis.interpolate(&a_values[k * degree], xi);
}

ScreeningProfile solve_screening(const TFDotSolution& sol, double tol, int refine_level) {
    if (!(tol > 0.0)) throw std::domain_error("solve_screening: tol must be > 0");
    ScreeningProfile out;
    const double R = sol.support_radius;
    out.support_radius = R;
    if (!(R > 0.0)) {
        // degenerate support: the integral term vanishes, a == 1
        out.panel_edges = {0.0, 0.0};
        out.residual = 0.0;
        return out;
    }

    // panels: uniform over the bulk, then geometric halving into the edge;
    // the solution carries an (R-r) ln(R-r) edge term, so the grading goes
    // deep enough for the last panel to sit below the target residual
    {
        std::size_t bulk = 4u << refine_level;
        for (std::size_t i = 0; i <= bulk; ++i)
            out.panel_edges.push_back(0.75 * R * double(i) / double(bulk));
        double e = 0.875;
        if (refine_level > 0) out.panel_edges.push_back(0.8125 * R);
        for (int i = 0; i < 15 + refine_level; ++i, e = 0.5 * (1.0 + e))
            out.panel_edges.push_back(e * R);
        out.panel_edges.push_back(R);
    }
    const std::size_t npanel = out.panel_edges.size() - 1;
    const std::size_t deg = out.degree;
    const std::size_t n = npanel * deg;

    PanelBasis basis;
    basis.ref_nodes = cheb_gauss(deg);
    basis.bary = cheb_gauss_weights(deg);

    out.nodes.resize(n);
    for (std::size_t k = 0; k < npanel; ++k) {
        double a = out.panel_edges[k], b = out.panel_edges[k + 1];
        for (std::size_t j = 0; j < deg; ++j)
            out.nodes[k * deg + j] = 0.5 * (a + b) + 0.5 * (b - a) * basis.ref_nodes[j];
    }

    // Nystrom matrix: (I + K) a = 1, K(i; k,j) = (1/2pi) int_Pk s k(r_i,s) L_kj(s) ds
    Matrix A(n, n);
    for (std::size_t i = 0; i < n; ++i) A(i, i) = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = out.nodes[i];
        for (std::size_t k = 0; k < npanel; ++k) {
            double a = out.panel_edges[k], b = out.panel_edges[k + 1];
            double width = b - a;
            auto accum = [&](double s, double w) {
                double ker = s * coulomb_kernel_2d(r, s) / (2.0 * M_PI);
                double xi = 2.0 * (s - a) / width - 1.0;
                for (std::size_t j = 0; j < deg; ++j)
                    A(i, k * deg + j) += w * ker * basis.lagrange(j, xi);
            };
            if (r > a && r < b) {
                // split at the log point; u^5 grading absorbs the log on
                // each side
                for (int side = 0; side < 2; ++side) {
                    double c = side == 0 ? a : b;
                    double len = c - r;
                    if (len == 0.0) continue;
                    auto sub = [&](double u, double w) {
                        double u2 = u * u;
                        double s = r + len * u2 * u2 * u;
                        accum(s, w * 5.0 * u2 * u2 * std::abs(len));
                    };
                    gauss16_accumulate(sub, 0.0, 0.35);
                    gauss16_accumulate(sub, 0.35, 0.7);
                    gauss16_accumulate(sub, 0.7, 1.0);
                }
            } else if ((r <= a ? a - r : r - b) < 2.0 * width) {
                // the kernel's log point sits just outside this panel:
                // grade geometrically toward the near edge
                bool near_lo = r <= a;
                double frac = 1.0;
                std::vector<double> cuts{near_lo ? b : a};
                for (int m = 0; m < 7; ++m) {
                    frac *= 0.25;
                    cuts.push_back(near_lo ? a + width * frac : b - width * frac);
                }
                cuts.push_back(near_lo ? a : b);
                for (std::size_t m = 0; m + 1 < cuts.size(); ++m) {
                    double lo = std::min(cuts[m], cuts[m + 1]);
                    double hi = std::max(cuts[m], cuts[m + 1]);
                    gauss16_accumulate(accum, lo, hi);
                }
            } else {
                double step = width / 4;
                for (int m = 0; m < 4; ++m)
                    gauss16_accumulate(accum, a + m * step, a + (m + 1) * step);
            }
        }
    }
    std::vector<double> rhs(n, 1.0);
    out.a_values = lu_solve(std::move(A), std::move(rhs), &out.cond_proxy);

    // independent residual: fine adaptive quadrature of the interpolant
    QuadratureSpec qs;
    qs.rel_tol = 1e-10;
    qs.abs_tol = 1e-11;
    qs.max_evals = 100000;
    auto a_fun = [&](double s) { return out.eval(s); };
    double worst = 0.0;
    auto defect = [&](double r) {
        double conv = coulomb_radial_2d(a_fun, R, r, qs) / (2.0 * M_PI);
        return std::abs(out.eval(r) - (1.0 - conv));
    };
    for (std::size_t i = 0; i < n; i += 3) worst = std::max(worst, defect(out.nodes[i]));
    for (int k = 1; k <= 10; ++k) worst = std::max(worst, defect(R * double(k) / 11.0 * 0.999));
    out.residual = worst;
    if (!(worst <= tol))
        throw NonConvergence("solve_screening: Fredholm residual above tolerance", worst);
    return out;
}

double screening_at(const ScreeningProfile& a, double r) {
    if (r <= a.support_radius) return a.eval(r);
    QuadratureSpec qs;
    qs.rel_tol = 1e-11;
    qs.abs_tol = 1e-13;
    qs.max_evals = 200000;
    auto a_fun = [&](double s) { return a.eval(s); };
    return 1.0 - coulomb_radial_2d(a_fun, a.support_radius, r, qs) / (2.0 * M_PI);
}

double dot_delta_term(const TFDotSolution& sol, const ScreeningProfile& a) {
    const double R = sol.support_radius;
    if (!(R > 0.0)) throw std::domain_error("dot_delta_term: degenerate support");
    QuadratureSpec qs;
    qs.rel_tol = 1e-10;
    qs.abs_tol = 1e-13;
    qs.max_evals = 400000;
    IntegrandOptions edge;
    edge.right = Endpoint::power_singular; // absorbs the sqrt edge of mu+
    edge.right_power = 0.5;
    auto num_f = [&](double r) { return r * std::sqrt(sol.mu_plus_at(r)) * a.eval(r); };
    auto den_f = [&](double r) { return r * a.eval(r); };
    double num = 2.0 * M_PI * integrate_1d(num_f, 0.0, R, qs, edge).value;
    double den = 2.0 * M_PI * integrate_1d(den_f, 0.0, R, qs).value;
    if (!(den > 0.0)) throw std::domain_error("dot_delta_term: zero denominator");
    return num * num / (std::pow(M_PI, 3.0) * den);
}

double dot_laplacian_term(const TFDotSolution& sol) {
    const double R = sol.support_radius;
    if (!(R > 0.0) || !std::isfinite(sol.W_prime_at_R))
        throw std::domain_error("dot_laplacian_term: support edge undefined");
    return R * sol.W_prime_at_R / 12.0;
}

double dot_laplacian_term_area(const TFDotSolution& sol) {
    const double R = sol.support_radius;
    QuadratureSpec qs;
    qs.rel_tol = 1e-9;
    qs.abs_tol = 1e-12;
    qs.max_evals = 200000;
    auto dens = [&](double s) { return sol.mu_plus_at(s); };
    // pointwise Laplacian of the induced potential from a local stencil
    double h = 2e-3 * R;
    auto conv = [&](double r) { return coulomb_radial_2d(dens, R, r, qs) / (2.0 * M_PI); };
    auto lap_W = [&](double r) {
        double cm2 = conv(r - 2 * h), cm1 = conv(r - h), c0 = conv(r), cp1 = conv(r + h),
               cp2 = conv(r + 2 * h);
        double d1 = (-cp2 + 8 * cp1 - 8 * cm1 + cm2) / (12 * h);
        double d2 = (-cp2 + 16 * cp1 - 30 * c0 + 16 * cm1 - cm2) / (12 * h * h);
        double vpart;
        const ConfinementSpec& V = sol.confinement;
        double vd2 = (V(r + h) - 2 * V(r) + V(r - h)) / (h * h);
        vpart = vd2 + V.derivative(r) / r;
        return vpart + d2 + d1 / r;
    };
    // pointwise-Laplacian quadrature over [r_in, R - delta]; the small inner
    // disk uses smoothness of Lap W at the origin, and the edge sliver is
    // taken from the flux difference across the annulus
    const double delta = 4.0 * h;
    const double r_in = 5.0 * h;
    std::vector<double> edges{r_in, 0.2 * R, 0.5 * R, 0.8 * R, 0.95 * R, R - delta};
    double area = 0.0;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        gauss16_accumulate([&](double r, double w) { area += w * r * lap_W(r); }, edges[k],
                           edges[k + 1]);
    }
    area *= 2.0 * M_PI;
    area += 2.0 * M_PI * 0.5 * r_in * r_in * lap_W(r_in);
    double hfit = 0.5 * h;
    auto wprime = [&](double r) {
        return sol.confinement.derivative(r) +
               (conv(r + hfit) - conv(r - hfit)) / (2.0 * hfit);
    };
    area += 2.0 * M_PI * (R * wprime(R) - (R - delta) * wprime(R - delta));
    return area / (24.0 * M_PI);
}

DotCorrelation dot_correlation(const TFDotSolution& sol, const QuadratureSpec& spec) {
    spec.validate();
    DotCorrelation out;
    out.corr_const = 0.1534 + 0.1455;
    const double R = sol.support_radius;
    QuadratureSpec qi = spec;
    qi.rel_tol = std::max(1e-9, spec.rel_tol * 0.01);
    qi.abs_tol = 1e-12;
    auto root = [&](double s) { return std::sqrt(sol.mu_plus_at(s)); };
    auto outer = [&](double r) {
        return r * root(r) * coulomb_radial_2d(root, R, r, qi);
    };
    QuadratureSpec qo = spec;
    qo.rel_tol = std::max(1e-7, spec.rel_tol);
    qo.max_evals = 100000;
    IntegrandOptions edge;
    edge.right = Endpoint::power_singular;
    edge.right_power = 0.5;
    double I = (R > 0.0) ? 2.0 * M_PI * integrate_1d(outer, 0.0, R, qo, edge).value : 0.0;
    out.corr_integral = I / (2.0 * std::pow(M_PI, 4.0));
    return out;
}

DotEnergyBreakdown dot_total_energy(double N, const ConfinementSpec& conf,
                                    const QuadratureSpec& spec, double tol,
                                    const DotSolverOptions& opts) {
    if (!(N >= 1.0)) throw std::domain_error("dot_total_energy: N must be >= 1");
    TFDotSolution sol = solve_tf_dot_radial(conf, tol, opts);
    ScreeningProfile a = solve_screening(sol, 1e-8);

    DotEnergyBreakdown b;
    b.n_electrons = N;
    b.e_tf = tf_dot_energy(sol, std::max(tol, 1e-4));

    QuadratureSpec qs;
    qs.rel_tol = 1e-10;
    qs.abs_tol = 1e-13;
    qs.max_evals = 200000;
    IntegrandOptions edge;
    edge.right = Endpoint::power_singular;
    edge.right_power = 0.5;
    auto f32 = [&](double r) { return r * std::pow(sol.mu_plus_at(r), 1.5); };
    double I32 = 2.0 * M_PI * integrate_1d(f32, 0.0, sol.support_radius, qs, edge).value;
    b.exchange_term = 2.0 / (3.0 * M_PI * M_PI) * I32;
    b.exchange_term_via_j = (16.0 * M_PI / 3.0) / std::pow(2.0 * M_PI, 3.0) * I32;

    b.laplacian_term = dot_laplacian_term(sol);
    b.delta_term = dot_delta_term(sol, a);
    DotCorrelation corr = dot_correlation(sol, spec);
    b.corr_const = corr.corr_const;
    b.corr_integral = corr.corr_integral;
    return b;
}

} // namespace tfhx
