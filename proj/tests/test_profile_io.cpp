#include <doctest.h>

#include <cstring>
#include <fstream>
#include <iterator>

#include "tfhx/common.hpp"
#include "tfhx/profile_io.hpp"
#include "tfhx/tf_atom.hpp"

using namespace tfhx;

TEST_CASE("profile CSV round-trips bit-exactly") {
    auto sol = solve_tf_atom(1.0, RadialGrid::logarithmic(1e-6, 1e4, 400), 1e-7);
    ProfileDump d;
    d.meta["d"] = "3";
    d.meta["q"] = format_g17(sol.q);
    d.meta["mu_global"] = format_g17(sol.mu_global);
    d.meta["residual"] = format_g17(sol.residual);
    d.meta["grid_size"] = std::to_string(sol.grid.size());
    d.r = sol.grid.nodes;
    d.mu_plus = sol.mu_plus;
    d.mu_plus_prime = sol.mu_plus_prime;
    write_profile_csv("roundtrip_profile.csv", d);
    auto back = read_profile_csv("roundtrip_profile.csv");
    REQUIRE(back.r.size() == d.r.size());
    CHECK(std::memcmp(back.r.data(), d.r.data(), d.r.size() * sizeof(double)) == 0);
    CHECK(std::memcmp(back.mu_plus.data(), d.mu_plus.data(), d.mu_plus.size() * sizeof(double)) == 0);
    CHECK(std::memcmp(back.mu_plus_prime.data(), d.mu_plus_prime.data(),
                      d.mu_plus_prime.size() * sizeof(double)) == 0);
    CHECK(back.meta.at("d") == "3");
    CHECK(back.meta.at("q") == format_g17(1.0));
}

TEST_CASE("round-trip through emit-load-emit produces identical bytes") {
    ProfileDump d;
    d.meta["d"] = "2";
    d.meta["confinement"] = "r^2";
    d.r = {0.1, 0.30000000000000004, 1e-300, 5e17};
    d.mu_plus = {1.0 / 3.0, 0.0, -0.0, 2.2250738585072014e-308};
    d.mu_plus_prime = {-1.5e-17, 3.141592653589793, 1.0, 0.0};
    write_profile_csv("bits_a.csv", d);
    auto back = read_profile_csv("bits_a.csv");
    write_profile_csv("bits_b.csv", back);
    std::ifstream a("bits_a.csv"), b("bits_b.csv");
    std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
}

TEST_CASE("unwritable paths surface as I/O errors") {
    ProfileDump d;
    d.r = {1.0};
    d.mu_plus = {1.0};
    d.mu_plus_prime = {0.0};
    CHECK_THROWS_AS(write_profile_csv("/no/such/dir/profile.csv", d), IoError);
}

TEST_CASE("profile reader errors") {
    CHECK_THROWS_AS(read_profile_csv("missing_profile.csv"), IoError);
    {
        std::ofstream bad("bad_profile.csv");
        bad << "# d = 3\nr,mu_plus,mu_plus_prime\n1.0,2.0\n";
    }
    CHECK_THROWS_WITH_AS(read_profile_csv("bad_profile.csv"), doctest::Contains("line 3"),
                         std::invalid_argument);
    {
        std::ofstream bad("bad_header.csv");
        bad << "radius,density\n";
    }
    CHECK_THROWS_AS(read_profile_csv("bad_header.csv"), std::invalid_argument);
}
