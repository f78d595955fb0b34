#include <doctest.h>

#include <cmath>

#include "tfhx/quadrature.hpp"
#include "tfhx/special_functions.hpp"

using namespace tfhx;

namespace {

// independent oracle: defining integral of K(m) by adaptive quadrature
double k_by_quadrature(double m) {
    QuadratureSpec spec;
    spec.rel_tol = 1e-13;
    spec.abs_tol = 1e-15;
    spec.max_evals = 2000000;
    auto f = [m](double th) {
        double s = std::sin(th);
        return 1.0 / std::sqrt(1.0 - m * s * s);
    };
    return integrate_1d(f, 0.0, 0.5 * M_PI, spec).value;
}

// independent oracle: alternating series for Catalan's constant with
// pairwise averaging of the tail
double catalan_series_oracle() {
    const int N = 4000000;
    double s = 0.0;
    for (int n = N - 1; n >= 0; --n) {
        double term = 1.0 / ((2.0 * n + 1.0) * (2.0 * n + 1.0));
        s += (n % 2 == 0) ? term : -term;
    }
    double s_prev = s - ((N - 1) % 2 == 0 ? 1.0 : -1.0) / ((2.0 * N - 1.0) * (2.0 * N - 1.0));
    return 0.5 * (s + s_prev);
}

double zeta3_series_oracle() {
    const int N = 2000000;
    double s = 0.0;
    for (int n = N; n >= 1; --n) s += 1.0 / (double(n) * n * n);
    double Nd = N;
    return s + 0.5 / (Nd * Nd) - 0.5 / (Nd * Nd * Nd);
}

} // namespace

TEST_CASE("K(0) is pi/2") { CHECK(elliptic_k(0.0) == doctest::Approx(M_PI / 2).epsilon(1e-15)); }

TEST_CASE("K(0.5) against direct quadrature of the defining integral") {
    double agm = elliptic_k(0.5);
    CHECK(agm == doctest::Approx(1.8540746773013719).epsilon(1e-13));
    CHECK(agm == doctest::Approx(k_by_quadrature(0.5)).epsilon(1e-12));
}

TEST_CASE("logarithmic endpoint behavior near m = 1") {
    // remainder is O((1-m) ln(1-m)), about 1.8e-6 at this m
    double m = 1.0 - 1e-6;
    double asym = 0.5 * std::log(16.0 / (1.0 - m));
    CHECK(std::abs(elliptic_k(m) - asym) < 1e-5);
    CHECK(elliptic_k(m) == doctest::Approx(k_by_quadrature(m)).epsilon(1e-9));
}

TEST_CASE("AGM matches quadrature to 1e-10 across the parameter range") {
    for (double m : {0.0, 0.25, 0.5, 0.75, 0.99}) {
        CHECK(std::abs(elliptic_k(m) - k_by_quadrature(m)) <
              1e-10 * std::max(1.0, elliptic_k(m)));
    }
}

TEST_CASE("K is strictly increasing in m") {
    double prev = elliptic_k(0.0);
    for (double m = 0.05; m < 1.0; m += 0.05) {
        double v = elliptic_k(std::min(m, 0.999999));
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("K domain errors") {
    CHECK_THROWS_AS(elliptic_k(1.0), std::domain_error);
    CHECK_THROWS_AS(elliptic_k(-0.1), std::domain_error);
}

TEST_CASE("E(m) sanity: E(0) = pi/2, E(1) = 1") {
    CHECK(elliptic_e(0.0) == doctest::Approx(M_PI / 2).epsilon(1e-14));
    CHECK(elliptic_e(1.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Catalan constant to 12 digits") {
    double g = catalan();
    CHECK(g == doctest::Approx(catalan_series_oracle()).epsilon(1e-12));
    CHECK(g == doctest::Approx(0.9159655941772190).epsilon(1e-13));
    CHECK(g > 0.9);
    CHECK(g < 1.3);
}

TEST_CASE("zeta(3) to 12 digits") {
    double z = zeta3();
    CHECK(z == doctest::Approx(zeta3_series_oracle()).epsilon(1e-12));
    CHECK(z == doctest::Approx(1.2020569031595943).epsilon(1e-12));
    CHECK(z > 0.9);
    CHECK(z < 1.3);
}

TEST_CASE("gamma series: first partial sums by hand") {
    CHECK(gamma_series_partial(1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gamma_series_partial(2) == doctest::Approx(1.0 - (1.0 / 8.0) * (2.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("gamma series converges and partial sums bracket the limit") {
    double g200 = gamma_series(200);
    double g400 = gamma_series(400);
    double limit = gamma_series(20000);
    CHECK(std::abs(g200 - g400) < 1e-6);
    CHECK(std::abs(g200 - limit) < 1e-6);
    CHECK(g200 == doctest::Approx(0.9424).epsilon(2e-4));
    for (int n = 5; n < 12; ++n) {
        double lo = gamma_series_partial(n);
        double hi = gamma_series_partial(n + 1);
        if (lo > hi) std::swap(lo, hi);
        CHECK(lo <= limit);
        CHECK(hi >= limit);
    }
    CHECK_THROWS_AS(gamma_series(1), std::domain_error);
}
