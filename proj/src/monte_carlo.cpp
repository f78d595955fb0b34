#include "tfhx/monte_carlo.hpp"

#include <cmath>

#include "tfhx/common.hpp"

namespace tfhx {

McSampler uniform_box_sampler(std::vector<double> lo, std::vector<double> hi) {
    if (lo.size() != hi.size() || lo.empty())
        throw std::invalid_argument("uniform_box_sampler: dimension mismatch");
    double vol = 1.0;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (!(hi[i] > lo[i])) throw std::invalid_argument("uniform_box_sampler: hi must exceed lo");
        vol *= hi[i] - lo[i];
    }
    McSampler s;
    s.dim = lo.size();
    s.draw = [lo, hi, vol](Rng& rng) -> std::optional<McPoint> {
        McPoint p;
        p.x.resize(lo.size());
        for (std::size_t i = 0; i < lo.size(); ++i) p.x[i] = rng.uniform(lo[i], hi[i]);
        p.weight = vol;
        return p;
    };
    return s;
}

McSampler unit_ball_sampler(std::size_t dim, double radius) {
    if (dim == 0) throw std::invalid_argument("unit_ball_sampler: dim must be >= 1");
    // ball volume: pi^(d/2) r^d / Gamma(d/2+1)
    double vol = std::pow(M_PI, 0.5 * dim) * std::pow(radius, double(dim)) /
                 std::tgamma(0.5 * dim + 1.0);
    McSampler s;
    s.dim = dim;
    s.draw = [dim, radius, vol](Rng& rng) -> std::optional<McPoint> {
        // direction from normals (Box-Muller, explicit), radius from u^(1/d)
        McPoint p;
        p.x.resize(dim);
        double norm2 = 0.0;
        std::size_t i = 0;
        while (i < dim) {
            double u1 = rng.u01();
            double u2 = rng.u01();
            if (u1 <= 0.0) u1 = 0x1.0p-53;
            double mag = std::sqrt(-2.0 * std::log(u1));
            double g1 = mag * std::cos(2.0 * M_PI * u2);
            double g2 = mag * std::sin(2.0 * M_PI * u2);
            p.x[i] = g1;
            norm2 += g1 * g1;
            ++i;
            if (i < dim) {
                p.x[i] = g2;
                norm2 += g2 * g2;
                ++i;
            }
        }
        double nrm = std::sqrt(norm2);
        if (nrm == 0.0) return std::nullopt;
        double r = radius * std::pow(rng.u01(), 1.0 / double(dim));
        for (auto& xi : p.x) xi *= r / nrm;
        p.weight = vol;
        return p;
    };
    return s;
}

McResult integrate_mc(const std::function<double(const std::vector<double>&)>& f,
                      const McSampler& sampler, const QuadratureSpec& spec) {
    spec.validate();
    constexpr std::uint64_t kChunk = 8192;
    const std::uint64_t n = spec.mc_samples;
    const std::uint64_t nchunks = (n + kChunk - 1) / kChunk;

    KahanSum sum, sum2;
    std::uint64_t accepted = 0;
    for (std::uint64_t c = 0; c < nchunks; ++c) {
        Rng rng = Rng::for_chunk(spec.seed, c);
        const std::uint64_t lo = c * kChunk;
        const std::uint64_t hi = std::min(n, lo + kChunk);
        KahanSum csum, csum2;
        for (std::uint64_t k = lo; k < hi; ++k) {
            auto pt = sampler.draw(rng);
            if (!pt) continue; // rejected proposal counts as zero weight
            ++accepted;
            double v = f(pt->x) * pt->weight;
            if (!std::isfinite(v)) throw IntegrandError(pt->x.empty() ? 0.0 : pt->x[0],
                                                        "non-finite Monte Carlo sample");
            csum.add(v);
            csum2.add(v * v);
        }
        sum.add(csum.value());
        sum2.add(csum2.value());
    }

    McResult r;
    r.samples = n;
    r.accepted = accepted;
    if (accepted == 0) {
        r.empty_region = true;
        return r;
    }
    // estimator normalizes by total draws: rejections are zero-valued samples
    double mean = sum.value() / double(n);
    double mean2 = sum2.value() / double(n);
    double var = std::max(0.0, mean2 - mean * mean);
    r.value = mean;
    r.std_error = std::sqrt(var / double(n));
    return r;
}

IntegralResult to_integral_result(const McResult& r) {
    return {r.value, r.std_error, r.samples, !r.empty_region};
}

} // namespace tfhx
