#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "tfhx/common.hpp"
#include "tfhx/dataset.hpp"
#include "tfhx/monte_carlo.hpp"
#include "tfhx/report.hpp"

using namespace tfhx;

namespace {

std::string write_tmp(const std::string& name, const std::string& content) {
    std::string path = "dataset_" + name + ".csv";
    std::ofstream out(path);
    out << content;
    return path;
}

CorrelationDataset synthetic(double slope, double c_prime, int n_lo, int n_hi) {
    CorrelationDataset ds;
    for (int n = n_lo; n <= n_hi; ++n) {
        CorrelationRecord r;
        r.n = n;
        r.label = "Z" + std::to_string(n);
        r.source = (n % 2 == 0) ? "exp" : "ext-hf";
        r.e_corr_hartree = double(n) * (-slope * std::log(double(n)) + c_prime);
        ds.records.push_back(r);
    }
    return ds;
}

} // namespace

TEST_CASE("header-only file loads as an empty dataset") {
    auto path = write_tmp("empty", "n,label,e_corr_hartree,source\n");
    auto ds = load_correlation_csv(path);
    CHECK(ds.records.empty());
}

TEST_CASE("single row loads with its fields") {
    auto path = write_tmp("one", "n,label,e_corr_hartree,source\n10,Ne,-0.39,exp\n");
    auto ds = load_correlation_csv(path);
    REQUIRE(ds.records.size() == 1);
    CHECK(ds.records[0].n == 10);
    CHECK(ds.records[0].label == "Ne");
    CHECK(ds.records[0].e_corr_hartree == doctest::Approx(-0.39));
    CHECK(ds.records[0].source == "exp");
}

TEST_CASE("schema violations are rejected with line numbers") {
    auto dup = write_tmp("dup", "n,label,e_corr_hartree,source\n5,B,-0.1,exp\n5,B2,-0.2,exp\n");
    CHECK_THROWS_WITH_AS(load_correlation_csv(dup),
                         doctest::Contains("duplicate n within source at line 3"),
                         std::invalid_argument);
    auto bad_src = write_tmp("src", "n,label,e_corr_hartree,source\n5,B,-0.1,guess\n");
    CHECK_THROWS_AS(load_correlation_csv(bad_src), std::invalid_argument);
    auto malformed = write_tmp("mal", "n,label,e_corr_hartree,source\n5,B\n");
    CHECK_THROWS_WITH_AS(load_correlation_csv(malformed), doctest::Contains("line 2"),
                         std::invalid_argument);
    CHECK_THROWS_AS(load_correlation_csv("does_not_exist.csv"), IoError);
    // duplicate n across *different* sources is allowed
    auto ok = write_tmp("ok", "n,label,e_corr_hartree,source\n5,B,-0.1,exp\n5,B,-0.11,ext-hf\n");
    CHECK(load_correlation_csv(ok).records.size() == 2);
}

TEST_CASE("fit recovers an exact synthetic offset") {
    auto ds = synthetic(0.062, -0.018, 2, 55);
    auto fit = fit_offset(ds, SlopeConvention::per_lnN, 0.062);
    CHECK(std::abs(fit.c_prime - (-0.018)) < 1e-12);
    CHECK(fit.max_rel_dev_n_ge_10 < 1e-10);
    for (double r : fit.residuals) CHECK(std::abs(r) < 1e-12);
}

TEST_CASE("fit under the other log convention") {
    // data generated with slope per ln N^{1/3} = 3 * 0.062 per ln N
    CorrelationDataset ds;
    for (int n = 3; n <= 40; ++n) {
        CorrelationRecord r;
        r.n = n;
        r.label = "x";
        r.source = "exp";
        r.e_corr_hartree = double(n) * (-0.186 * std::log(double(n)) / 3.0 - 0.018);
        ds.records.push_back(r);
    }
    auto fit = fit_offset(ds, SlopeConvention::per_lnN13, 0.186);
    CHECK(std::abs(fit.c_prime - (-0.018)) < 1e-12);
}

TEST_CASE("fit is robust to one-percent noise") {
    auto ds = synthetic(0.062, -0.018, 2, 55);
    Rng rng(424242);
    for (auto& r : ds.records) r.e_corr_hartree *= 1.0 + 0.01 * (2.0 * rng.u01() - 1.0);
    auto fit = fit_offset(ds, SlopeConvention::per_lnN, 0.062);
    CHECK(std::abs(fit.c_prime + 0.018) < 0.002);
}

TEST_CASE("fit is exactly invariant under record reordering") {
    auto ds = synthetic(0.062, -0.0185, 2, 30);
    auto fit1 = fit_offset(ds, SlopeConvention::per_lnN, 0.062);
    auto shuffled = ds;
    std::reverse(shuffled.records.begin(), shuffled.records.end());
    std::swap(shuffled.records[0], shuffled.records[7]);
    auto fit2 = fit_offset(shuffled, SlopeConvention::per_lnN, 0.062);
    CHECK(fit1.c_prime == fit2.c_prime);
    CHECK(fit1.max_rel_dev_n_ge_10 == fit2.max_rel_dev_n_ge_10);
}

TEST_CASE("fit rejects short datasets") {
    auto ds = synthetic(0.062, -0.018, 2, 3);
    CHECK(ds.records.size() == 2);
    CHECK_THROWS_AS(fit_offset(ds, SlopeConvention::per_lnN, 0.062), std::invalid_argument);
}

TEST_CASE("plot data has one row per record") {
    auto ds = synthetic(0.062, -0.018, 2, 12);
    auto fit = fit_offset(ds, SlopeConvention::per_lnN, 0.062);
    auto csv = fit_plot_csv(fit, ds);
    std::size_t rows = std::count(csv.begin(), csv.end(), '\n');
    CHECK(rows == ds.records.size() + 1);
    CHECK(csv.rfind("n,model,data\n", 0) == 0);
}
