#include <doctest.h>

#include <cmath>

#include "tfhx/common.hpp"
#include "tfhx/tf_atom.hpp"

using namespace tfhx;

namespace {

const TFAtomSolution& neutral() {
    static TFAtomSolution sol =
        solve_tf_atom(1.0, RadialGrid::logarithmic(1e-6, 1e4, 2000), 1e-8);
    return sol;
}

double normalization(const TFAtomSolution& sol) {
    // integrate the solution itself, splitting at the ion support edge where
    // the density has its kink
    QuadratureSpec qs;
    qs.rel_tol = 1e-10;
    qs.abs_tol = 1e-13;
    qs.max_evals = 2000000;
    IntegrandOptions opts;
    opts.left = Endpoint::power_singular;
    opts.left_power = 0.5;
    double hi = std::min(sol.support_radius, sol.grid.nodes.back());
    auto f = [&](double r) { return r * r * std::pow(sol.mu_plus_at(r), 1.5); };
    double acc = integrate_1d(f, 0.0, hi, qs, opts).value;
    if (!std::isfinite(sol.support_radius)) {
        double T = sol.tail_coeff;
        acc += std::pow(T, 1.5) / (4.0 * std::pow(sol.grid.nodes.back(), 4.0));
    }
    return acc * 4.0 * M_PI / (3.0 * M_PI * M_PI);
}

double normalization_grid_weights(const TFAtomSolution& sol) {
    double acc = 0.0;
    for (std::size_t i = 0; i < sol.grid.size(); ++i)
        acc += sol.grid.w_r2dr[i] * std::pow(sol.mu_plus[i], 1.5);
    return acc * 4.0 * M_PI / (3.0 * M_PI * M_PI);
}

} // namespace

TEST_CASE("neutral atom: normalization, origin and tail coefficients") {
    const auto& sol = neutral();
    CHECK(sol.mu_global == 0.0);
    CHECK(normalization(sol) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(normalization_grid_weights(sol) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(sol.origin_coeff - 1.0) <= 0.01);
    // Sommerfeld constant through the length rescale: 144 b^3 = 81 pi^2
    CHECK(sol.tail_coeff == doctest::Approx(81.0 * M_PI * M_PI).epsilon(0.01));
    CHECK(sol.initial_slope == doctest::Approx(1.5880710226).epsilon(1e-9));
    CHECK(sol.residual <= 1e-8);
}

TEST_CASE("neutral atom profile is strictly decreasing") {
    const auto& sol = neutral();
    for (std::size_t i = 0; i + 1 < sol.grid.size(); ++i)
        CHECK(sol.mu_plus[i + 1] < sol.mu_plus[i]);
    for (std::size_t i = 0; i < sol.grid.size(); i += 97)
        CHECK(sol.mu_plus_prime[i] < 0.0);
}

TEST_CASE("neutral atom energy in hartrees") {
    auto ctx = ScalingContext::atom(20.0, 20.0);
    auto e = tf_energy(neutral(), ctx);
    double per = e.hartree / std::pow(20.0, 7.0 / 3.0);
    CHECK(per == doctest::Approx(-0.7687).epsilon(1e-3));
}

TEST_CASE("grid refinement changes the energy by less than 0.1%") {
    auto coarse = solve_tf_atom(1.0, RadialGrid::logarithmic(1e-6, 1e4, 1000), 1e-8);
    auto ctx = ScalingContext::atom(1.0, 1.0);
    double e1 = tf_energy(coarse, ctx).hartree;
    double e2 = tf_energy(neutral(), ctx).hartree;
    CHECK(std::abs(e1 - e2) / std::abs(e2) < 1e-3);
}

TEST_CASE("integrated density of states closes the normalization loop") {
    auto ctx = ScalingContext::atom(30.0, 30.0);
    const auto& sol = neutral();
    double D = integrated_dos(sol, ctx, sol.mu_global);
    CHECK(D == doctest::Approx(0.5 * ctx.N).epsilon(1e-4));
    // monotone in e
    double d1 = integrated_dos(sol, ctx, -1.0);
    double d2 = integrated_dos(sol, ctx, -0.1);
    double d3 = integrated_dos(sol, ctx, -0.01);
    CHECK(d1 <= d2);
    CHECK(d2 <= d3);
    CHECK(d3 <= D);
    CHECK(integrated_dos(sol, ctx, -1e9) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(integrated_dos(sol, ctx, 0.5), std::domain_error);
}

TEST_CASE("ion solve: normalization, boundary matching and negative mu") {
    auto grid = RadialGrid::logarithmic(1e-6, 1e3, 1200);
    for (double q : {0.5, 0.8}) {
        auto sol = solve_tf_atom(q, grid, 1e-7);
        CHECK(sol.mu_global < 0.0);
        CHECK(std::isfinite(sol.support_radius));
        CHECK(normalization(sol) == doctest::Approx(q).epsilon(1e-6));
        // exterior relation mu_global * r0 = -(1 - q)
        CHECK(sol.mu_global * sol.support_radius == doctest::Approx(-(1.0 - q)).epsilon(1e-8));
        CHECK(sol.residual <= 1e-7);
        // profile vanishes beyond the support
        CHECK(sol.mu_plus_at(sol.support_radius * 1.01) == 0.0);
    }
}

TEST_CASE("domain errors") {
    auto grid = RadialGrid::logarithmic(1e-4, 10.0, 64);
    CHECK_THROWS_AS(solve_tf_atom(1.2, grid, 1e-8), std::domain_error);
    CHECK_THROWS_AS(solve_tf_atom(0.0, grid, 1e-8), std::domain_error);
}

TEST_CASE("tf_energy rejects an unsolved profile") {
    TFAtomSolution fake = neutral();
    fake.residual = 1.0;
    auto ctx = ScalingContext::atom(1.0, 1.0);
    CHECK_THROWS_AS(tf_energy(fake, ctx), NonConvergence);
}

TEST_CASE("scaling context invariants") {
    auto a = ScalingContext::atom(10.0, 10.0);
    CHECK(a.epsilon == doctest::Approx(std::pow(10.0, -1.0 / 3.0)).epsilon(1e-15));
    CHECK(a.alpha_d == doctest::Approx(1.0 / (6.0 * M_PI * M_PI)).epsilon(1e-15));
    auto d = ScalingContext::dot(50.0);
    CHECK(d.alpha_d == doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-15));
    CHECK(d.q == 1.0);
    CHECK(d.Z == d.N);
    CHECK_THROWS_AS(ScalingContext::atom(10.0, 11.0), std::domain_error);
}
