#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "tfhx/quadrature.hpp"

namespace tfhx {

/// xoshiro256** seeded through splitmix64. Self-contained so streams are
/// bit-identical across platforms (std:: distributions are not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& si : s_) si = splitmix64(x);
    }

    std::uint64_t next_u64() {
        std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// uniform on [0,1)
    double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// uniform on (lo,hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// independent substream for work chunk `chunk` of stream `seed`
    static Rng for_chunk(std::uint64_t seed, std::uint64_t chunk) {
        std::uint64_t x = seed ^ (0xd1342543de82ef95ULL * (chunk + 1));
        return Rng(splitmix64(x));
    }

private:
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
    std::array<std::uint64_t, 4> s_{};
};

struct McPoint {
    std::vector<double> x;
    double weight = 1.0; // 1/density at x
};

/// Region description with density: draw() returns a point and its 1/pdf
/// weight, or nullopt when the proposal fell outside the region.
struct McSampler {
    std::size_t dim = 0;
    std::function<std::optional<McPoint>(Rng&)> draw;
};

McSampler uniform_box_sampler(std::vector<double> lo, std::vector<double> hi);
McSampler unit_ball_sampler(std::size_t dim, double radius = 1.0);

struct McResult {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t accepted = 0;
    bool empty_region = false;
};

/// Chunked Monte Carlo mean estimator. One substream per 8192-sample chunk,
/// derived from (seed, chunk index): totals do not depend on how chunks would
/// be distributed across workers. Zero accepted samples yields value 0 with
/// the empty_region flag set.
McResult integrate_mc(const std::function<double(const std::vector<double>&)>& f,
                      const McSampler& sampler, const QuadratureSpec& spec);

/// Adapter to the common IntegralResult shape (error_estimate = standard error).
IntegralResult to_integral_result(const McResult& r);

} // namespace tfhx
