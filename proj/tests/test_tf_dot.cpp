#include <doctest.h>

#include <cmath>

#include "tfhx/common.hpp"
#include "tfhx/coulomb2d.hpp"
#include "tfhx/tf_dot.hpp"

using namespace tfhx;

namespace {

const TFDotSolution& parabolic() {
    static TFDotSolution sol = [] {
        DotSolverOptions opts;
        opts.grid_n = 1200;
        return solve_tf_dot_radial(ConfinementSpec::power_law(2.0), 1e-5, opts);
    }();
    return sol;
}

double charge(const TFDotSolution& sol) {
    double q = 0.0;
    for (std::size_t i = 0; i < sol.grid.size(); ++i) q += sol.grid.w_rdr[i] * sol.mu_plus[i];
    return q;
}

} // namespace

TEST_CASE("radial Coulomb kernel: center, far field, narrow ring") {
    QuadratureSpec qs;
    qs.rel_tol = 1e-10;
    qs.abs_tol = 1e-13;
    qs.max_evals = 200000;
    const double R = 1.3, sigma = 0.7;
    auto flat = [&](double) { return sigma; };
    CHECK(coulomb_radial_2d(flat, R, 0.0, qs) == doctest::Approx(2.0 * M_PI * sigma * R).epsilon(1e-10));
    // far field: leading monopole (total charge pi R^2 sigma over distance)
    double far = coulomb_radial_2d(flat, R, 2.0 * R, qs);
    CHECK(far == doctest::Approx(M_PI * R * R * sigma / (2.0 * R)).epsilon(0.02));
    // narrow ring at s0 seen from the center: total charge / s0
    double s0 = 0.8, ds = 1e-4;
    auto ring = [&](double s) { return (std::abs(s - s0) <= 0.5 * ds) ? 1.0 : 0.0; };
    double v = coulomb_radial_2d(ring, R, 0.0, qs);
    CHECK(v == doctest::Approx(2.0 * M_PI * s0 * ds / s0).epsilon(1e-3));
}

TEST_CASE("kernel maps the semicircular profile to a quadratic potential") {
    QuadratureSpec qs;
    qs.rel_tol = 1e-10;
    qs.abs_tol = 1e-13;
    qs.max_evals = 400000;
    const double R = 1.4, c = 0.9;
    auto semi = [&](double s) {
        double v = 1.0 - s * s / (R * R);
        return v > 0.0 ? c * std::sqrt(v) : 0.0;
    };
    for (double r : {0.0, 0.4, 0.9, 1.3}) {
        double exact = M_PI * M_PI * c / (4.0 * R) * (2.0 * R * R - r * r);
        CHECK(coulomb_radial_2d(semi, R, r, qs) == doctest::Approx(exact).epsilon(1e-7));
    }
}

TEST_CASE("parabolic dot: normalization, support, residual") {
    const auto& sol = parabolic();
    CHECK(charge(sol) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(sol.residual <= 1e-5);
    CHECK(sol.mu_global == doctest::Approx(3.1929).epsilon(1e-3));
    CHECK(sol.support_radius == doctest::Approx(1.5713).epsilon(1e-3));
    // single support interval: positive strictly inside, zero at and beyond R
    bool seen_zero = false;
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
        if (sol.grid.nodes[i] < sol.support_radius * 0.999) {
            CHECK(sol.mu_plus[i] > 0.0);
            CHECK(!seen_zero);
        } else if (sol.grid.nodes[i] >= sol.support_radius) {
            CHECK(sol.mu_plus[i] == 0.0);
            seen_zero = true;
        }
    }
}

TEST_CASE("parabolic dot is far from a semicircular profile") {
    // the best-fit semicircle misses by about a tenth of the peak; recorded
    // here as a measured property of the solved equation
    const auto& sol = parabolic();
    double best = 1e300;
    for (double Rf = 0.8 * sol.support_radius; Rf <= 1.2 * sol.support_radius;
         Rf += 1e-3 * sol.support_radius) {
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < sol.grid.size(); ++i) {
            double b = 1.0 - sol.grid.nodes[i] * sol.grid.nodes[i] / (Rf * Rf);
            b = b > 0.0 ? std::sqrt(b) : 0.0;
            num += sol.mu_plus[i] * b;
            den += b * b;
        }
        double c = num / den, dev = 0.0;
        for (std::size_t i = 0; i < sol.grid.size(); ++i) {
            double b = 1.0 - sol.grid.nodes[i] * sol.grid.nodes[i] / (Rf * Rf);
            b = b > 0.0 ? std::sqrt(b) : 0.0;
            dev = std::max(dev, std::abs(sol.mu_plus[i] - c * b));
        }
        best = std::min(best, dev);
    }
    double peak = sol.mu_plus_at(sol.grid.nodes.front());
    CHECK(best / peak > 0.05);
    CHECK(best / peak < 0.2);
}

TEST_CASE("dot TF energy: two independent assembly routes agree") {
    const auto& sol = parabolic();
    double e_adaptive = tf_dot_energy(sol);
    double acc = 0.0;
    for (std::size_t i = 0; i < sol.grid.size(); ++i)
        acc += sol.grid.w_rdr[i] * sol.confinement(sol.grid.nodes[i]) * sol.mu_plus[i];
    double e_weights = 0.5 * (sol.mu_global + acc);
    CHECK(e_adaptive == doctest::Approx(e_weights).epsilon(5e-3));
    CHECK(e_adaptive == doctest::Approx(2.0206).epsilon(1e-3));
}

TEST_CASE("quartic dot: interior positivity and a single sign change") {
    DotSolverOptions opts;
    opts.grid_n = 500;
    auto sol = solve_tf_dot_radial(ConfinementSpec::power_law(4.0), 1e-4, opts);
    CHECK(sol.mu_plus_at(sol.grid.nodes.front()) > 0.0);
    CHECK(sol.mu_plus_at(sol.support_radius) == 0.0);
    int sign_changes = 0;
    double prev = sol.mu_of_r.front();
    for (double v : sol.mu_of_r) {
        if (v * prev < 0.0) ++sign_changes;
        if (v != 0.0) prev = v;
    }
    CHECK(sign_changes == 1);
    CHECK(charge(sol) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("dot integrated density of states closes the loop") {
    auto ctx = ScalingContext::dot(64.0);
    const auto& sol = parabolic();
    CHECK(integrated_dos(sol, ctx, sol.mu_global) == doctest::Approx(32.0).epsilon(1e-4));
    CHECK(integrated_dos(sol, ctx, sol.confinement(0.0) - 1.0) == 0.0);
    double d1 = integrated_dos(sol, ctx, 0.5 * sol.mu_global);
    double d2 = integrated_dos(sol, ctx, 0.8 * sol.mu_global);
    CHECK(d1 < d2);
}

TEST_CASE("tabulated confinement reproduces its power-law source") {
    std::vector<double> r, v;
    for (int i = 0; i <= 60; ++i) {
        double x = 0.1 * i;
        r.push_back(x);
        v.push_back(x * x);
    }
    auto tab = ConfinementSpec::tabulated(r, v, "sampled r^2");
    DotSolverOptions opts;
    opts.grid_n = 400;
    auto sol = solve_tf_dot_radial(tab, 1e-4, opts);
    CHECK(sol.mu_global == doctest::Approx(parabolic().mu_global).epsilon(1e-3));
}

TEST_CASE("kernel rejects negative radii") {
    QuadratureSpec qs;
    CHECK_THROWS_AS(coulomb_radial_2d([](double) { return 1.0; }, 1.0, -0.1, qs),
                    std::domain_error);
    CHECK_THROWS_AS(coulomb_kernel_2d(-1.0, 0.5), std::domain_error);
}

TEST_CASE("non-confining potentials are rejected") {
    CHECK_THROWS_AS(ConfinementSpec::power_law(-1.0), std::domain_error);
    CHECK_THROWS_AS(ConfinementSpec::power_law(2.0, -3.0), std::domain_error);
    std::vector<double> r{0.0, 1.0, 2.0, 3.0}, v{1.0, 0.8, 0.5, 0.2};
    CHECK_THROWS_AS(ConfinementSpec::tabulated(r, v), std::domain_error);
}

TEST_CASE("iteration budget exhaustion reports non-convergence") {
    DotSolverOptions opts;
    opts.grid_n = 200;
    opts.max_inner = 3;
    CHECK_THROWS_AS(solve_tf_dot_radial(ConfinementSpec::power_law(2.0), 1e-5, opts),
                    NonConvergence);
}
