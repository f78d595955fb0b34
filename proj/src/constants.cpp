#include "tfhx/constants.hpp"

#include <cmath>

#include "tfhx/common.hpp"
#include "tfhx/monte_carlo.hpp"
#include "tfhx/special_functions.hpp"

namespace tfhx {
namespace {

double sphere_surface(int d) { return (d == 3) ? 4.0 * M_PI : 2.0 * M_PI; }

} // namespace

void ConstantReport::finalize() {
    if (std::isnan(closed_form)) {
        rel_error = std::abs(numeric - numeric_alt) / std::max(std::abs(numeric), 1e-300);
    } else {
        rel_error = std::abs(numeric - closed_form) / std::max(std::abs(closed_form), 1e-300);
    }
}

double pair_bubble_alpha(double k, double t) {
    // alpha_t(k;1) = int du e^{-t k (k+2u)} m(u),
    // m(u) = 2[sqrt(1-u^2) - sqrt(max(0, 1-(u+k)^2))], u in [max(-1,-k/2), 1];
    // the transverse constraint direction integrates to the chord measure m(u).
    QuadratureSpec qa;
    qa.rel_tol = 1e-8;
    qa.abs_tol = 1e-12;
    qa.max_evals = 20000;
    double lo = std::max(-1.0, -0.5 * k);
    auto f = [&](double u) {
        double inner = 1.0 - u * u;
        double a = inner > 0.0 ? std::sqrt(inner) : 0.0;
        double outer = 1.0 - (u + k) * (u + k);
        double b = outer > 0.0 ? std::sqrt(outer) : 0.0;
        double m = 2.0 * (a - b);
        if (m <= 0.0) return 0.0;
        return std::exp(-t * k * (k + 2.0 * u)) * m;
    };
    return integrate_1d(f, lo, 1.0, qa).value;
}

ConstantReport i2_report(const QuadratureSpec& spec) {
    spec.validate();
    ConstantReport rep;
    rep.name = "i2";
    rep.method = "nested quadrature (u,t,k) of the pair-bubble square";
    rep.spec = spec;
    rep.closed_form = 2.0 * M_PI * M_PI * M_PI * (1.0 - std::log(2.0));

    auto alpha = [&](double k, double t) { return pair_bubble_alpha(k, t); };

    QuadratureSpec qt;
    qt.rel_tol = 1e-7;
    qt.abs_tol = 1e-12;
    qt.max_evals = 40000;
    auto F = [&](double k) {
        double t_scale = 1.0 / (k * std::max(k, 0.5));
        auto f = [&](double tau) {
            double om = 1.0 - tau;
            double t = t_scale * tau / om;
            double a = alpha(k, t);
            return a * a * t_scale / (om * om);
        };
        return integrate_1d(f, 0.0, 1.0, qt).value;
    };

    QuadratureSpec qk;
    qk.rel_tol = 1e-5;
    qk.abs_tol = 1e-9;
    qk.max_evals = 60000;
    auto g = [&](double k) { return F(k) / k; };
    IntegralResult outer =
        integrate_1d_segmented(g, {1e-4, 0.05, 0.3, 1.0, 2.0, 2.5, 4.0, 8.0, 16.0, 40.0, 120.0, 300.0}, qk);
    rep.numeric = 2.0 * M_PI * outer.value;
    rep.flagged = !outer.converged;
    rep.finalize();
    return rep;
}

ConstantReport ec1_star_dot(const QuadratureSpec& spec, const ConstantReport* i2) {
    ConstantReport rep;
    rep.name = "ec1_star_dot";
    rep.method = "prefactor chain S_2^2/(2 chi_2^3) * (2 d chi_2 / S_2) * I_2";
    rep.spec = spec;
    rep.closed_form = 0.5 * (1.0 - std::log(2.0));
    ConstantReport i2_local;
    if (!i2) {
        i2_local = i2_report(spec);
        i2 = &i2_local;
    }
    const double S = sphere_surface(2);
    const double chi = std::pow(2.0 * M_PI, 2.0);
    double pref = S * S / (2.0 * chi * chi * chi); // 1/(32 pi^4)
    double x0_factor = 2.0 * 2.0 * chi / S;        // 8 pi
    rep.numeric = pref * x0_factor * i2->numeric;
    rep.flagged = i2->flagged;
    rep.finalize();
    return rep;
}

ConstantReport xlog_coefficient() {
    ConstantReport rep;
    rep.name = "xlog_coefficient";
    rep.method = "prefactor 1/(64 pi^7) times 2 (1-ln2) (2 pi)^5";
    rep.closed_form = 0.03109;
    double pref = 1.0 / (64.0 * std::pow(M_PI, 7.0));
    rep.numeric = pref * 2.0 * (1.0 - std::log(2.0)) * std::pow(2.0 * M_PI, 5.0);
    rep.finalize();
    return rep;
}

BPair b_constants(const QuadratureSpec& spec) {
    spec.validate();
    const double G = catalan();
    const double z3 = zeta3();
    const double gam = gamma_series(400);

    auto run = [&](int d) {
        ConstantReport rep;
        rep.name = (d == 3) ? "b3" : "b2";
        rep.method = "importance-sampled MC over the particle-hole constraint region";
        rep.spec = spec;
        rep.closed_form = (d == 3) ? std::log(2.0) / 6.0 - 3.0 * z3 / (4.0 * M_PI * M_PI)
                                   : G / 3.0 - 2.0 * gam / (M_PI * M_PI);

        const double Sd = sphere_surface(d);
        const double chi_d = std::pow(2.0 * M_PI, double(d));
        const double Vd = (d == 3) ? 4.0 * M_PI / 3.0 : M_PI;

        // variables: holes h1, h2 in the unit ball, transfer u with
        // |u|-density (1+|u|)^-2; integrand u^{1-d} S^{1-d} / (u . S),
        // S = h1 + h2 + u; the u^{1-d} cancels against the radial density.
        McSampler sampler;
        sampler.dim = 3 * d;
        sampler.draw = [d](Rng& rng) -> std::optional<McPoint> {
            McPoint p;
            p.x.resize(3 * d);
            // two unit-ball points
            for (int blk = 0; blk < 2; ++blk) {
                double nrm2 = 0.0;
                double v[3] = {0, 0, 0};
                for (int i = 0; i < d; i += 2) {
                    double u1 = rng.u01(), u2 = rng.u01();
                    if (u1 <= 0.0) u1 = 0x1.0p-53;
                    double mag = std::sqrt(-2.0 * std::log(u1));
                    v[i] = mag * std::cos(2.0 * M_PI * u2);
                    if (i + 1 < d) v[i + 1] = mag * std::sin(2.0 * M_PI * u2);
                }
                for (int i = 0; i < d; ++i) nrm2 += v[i] * v[i];
                if (nrm2 == 0.0) return std::nullopt;
                double r = std::pow(rng.u01(), 1.0 / double(d)) / std::sqrt(nrm2);
                for (int i = 0; i < d; ++i) p.x[blk * d + i] = v[i] * r;
            }
            // transfer direction uniform, magnitude from (1+u)^-2
            {
                double v[3] = {0, 0, 0};
                double nrm2 = 0.0;
                for (int i = 0; i < d; i += 2) {
                    double u1 = rng.u01(), u2 = rng.u01();
                    if (u1 <= 0.0) u1 = 0x1.0p-53;
                    double mag = std::sqrt(-2.0 * std::log(u1));
                    v[i] = mag * std::cos(2.0 * M_PI * u2);
                    if (i + 1 < d) v[i + 1] = mag * std::sin(2.0 * M_PI * u2);
                }
                for (int i = 0; i < d; ++i) nrm2 += v[i] * v[i];
                if (nrm2 == 0.0) return std::nullopt;
                double x = rng.u01();
                if (x >= 1.0) x = 1.0 - 0x1.0p-53;
                double umag = x / (1.0 - x); // CDF of (1+u)^-2 is u/(1+u)
                for (int i = 0; i < d; ++i) p.x[2 * d + i] = v[i] * umag / std::sqrt(nrm2);
            }
            p.weight = 1.0; // assembled in the integrand for clarity
            return p;
        };

        auto f = [d, Sd, Vd](const std::vector<double>& x) -> double {
            double h1[3], h2[3], u[3], S[3];
            double u2 = 0.0;
            for (int i = 0; i < d; ++i) {
                h1[i] = x[i];
                h2[i] = x[d + i];
                u[i] = x[2 * d + i];
                u2 += u[i] * u[i];
            }
            double umag = std::sqrt(u2);
            double p1o = 0.0, p2o = 0.0, uS = 0.0, S2 = 0.0;
            for (int i = 0; i < d; ++i) {
                double a = h1[i] + u[i];
                double b = h2[i] + u[i];
                p1o += a * a;
                p2o += b * b;
                S[i] = h1[i] + h2[i] + u[i];
                uS += u[i] * S[i];
                S2 += S[i] * S[i];
            }
            if (p1o < 1.0 || p2o < 1.0) return 0.0; // both excited states outside the sea
            double Smag = std::sqrt(S2);
            if (!(uS > 0.0) || !(Smag > 0.0)) return 0.0;
            // weights: balls V_d each; |u|: S_d u^{d-1} (1+u)^2 with u^{1-d}
            // from the integrand cancelling the radial factor
            double w = Vd * Vd * Sd * (1.0 + umag) * (1.0 + umag);
            return w * std::pow(Smag, 1.0 - double(d)) / uS;
        };

        McResult mc = integrate_mc(f, sampler, spec);
        if (mc.empty_region)
            throw NonConvergence("b_constants: empty Monte Carlo region", 1.0);
        double b_d = mc.value / std::pow(2.0, double(d));
        double chain = double(d) * Sd * std::pow(2.0, double(d) - 1.0) / (chi_d * chi_d);
        rep.numeric = chain * b_d;
        rep.std_error = chain * mc.std_error / std::pow(2.0, double(d));
        rep.finalize();
        return rep;
    };

    return {run(3), run(2)};
}

ConstantReport a_d_constant(int d) {
    if (d != 2 && d != 3) throw std::domain_error("a_d_constant: d must be 2 or 3");
    ConstantReport rep;
    rep.name = (d == 3) ? "a3" : "a2";
    rep.method = "g_d(1;1) chord quadrature against 4/S_d";
    const double Sd = sphere_surface(d);
    rep.closed_form = -4.0 * double(d) / (Sd * Sd);

    // g_d(1;1) = c_d int dp p^{1-d} theta(1 - (q-p)^2), |q| = 1:
    // polar measure around the origin; the constraint truncates each ray at
    // p = 2 cos(angle)
    const double c_d = Sd / std::pow(2.0 * M_PI, double(d));
    QuadratureSpec qs;
    qs.rel_tol = 1e-10;
    qs.abs_tol = 1e-14;
    qs.max_evals = 100000;
    auto ray = [&](double cosang) {
        if (cosang <= 0.0) return 0.0;
        auto f = [&](double p) { return std::pow(p, 1.0 - d) * std::pow(p, d - 1.0); };
        return integrate_1d(f, 0.0, 2.0 * cosang, qs).value;
    };
    double g_num;
    if (d == 3) {
        auto f = [&](double ang) { return 2.0 * M_PI * std::sin(ang) * ray(std::cos(ang)); };
        g_num = c_d * integrate_1d(f, 0.0, 0.5 * M_PI, qs).value;
    } else {
        auto f = [&](double ang) { return 2.0 * ray(std::cos(ang)); };
        g_num = c_d * integrate_1d(f, 0.0, 0.5 * M_PI, qs).value;
    }
    rep.numeric = -double(d) * g_num / Sd; // -d g/S_d, with g -> 4/S_d closing the form
    rep.method += " (g_num = " + std::to_string(g_num) + ")";
    rep.finalize();
    return rep;
}

ConstantReport j_exchange(const QuadratureSpec& spec) {
    spec.validate();
    ConstantReport rep;
    rep.name = "j_exchange";
    rep.method = "MC over two unit disks of 1/|p1+p2|";
    rep.spec = spec;
    rep.closed_form = 16.0 * M_PI / 3.0;

    McSampler disks;
    disks.dim = 4;
    disks.draw = [](Rng& rng) -> std::optional<McPoint> {
        McPoint p;
        p.x.resize(4);
        for (int blk = 0; blk < 2; ++blk) {
            double th = 2.0 * M_PI * rng.u01();
            double r = std::sqrt(rng.u01());
            p.x[2 * blk] = r * std::cos(th);
            p.x[2 * blk + 1] = r * std::sin(th);
        }
        p.weight = M_PI * M_PI;
        return p;
    };
    auto f = [](const std::vector<double>& x) {
        double sx = x[0] + x[2], sy = x[1] + x[3];
        double n = std::sqrt(sx * sx + sy * sy);
        return (n > 0.0) ? 1.0 / n : 0.0;
    };
    McResult mc = integrate_mc(f, disks, spec);
    rep.numeric = mc.value;
    rep.std_error = mc.std_error;
    rep.finalize();
    return rep;
}

double c_appendix_integrand(double k) {
    if (!(k > 0.0)) throw std::domain_error("c_appendix_integrand: k must be > 0");
    double L = std::log(std::abs((k + 1.0) / (k - 1.0)));
    double v = k * k / (k * k + 1.0) * L;
    if (k > 1.0) v -= 2.0 / k;
    return v;
}

ConstantReport c_appendix(const QuadratureSpec& spec) {
    spec.validate();
    ConstantReport rep;
    rep.name = "c_appendix";
    rep.method = "split quadrature and k->1/k symmetrization";
    rep.spec = spec;
    rep.closed_form = std::numeric_limits<double>::quiet_NaN();

    auto L = [](double k) { return std::log(std::abs((k + 1.0) / (k - 1.0))); };
    QuadratureSpec qs = spec;
    qs.rel_tol = std::min(spec.rel_tol, 1e-11);
    qs.abs_tol = 1e-13;
    qs.max_evals = std::max<std::uint64_t>(spec.max_evals, 400000);

    // method 1: split at the log point
    IntegrandOptions right_log;
    right_log.right = Endpoint::log_singular;
    IntegrandOptions left_log;
    left_log.left = Endpoint::log_singular;
    auto f_lo = [&](double k) { return k * k / (k * k + 1.0) * L(k); };
    auto f_hi = [&](double k) { return k * k / (k * k + 1.0) * L(k) - 2.0 / k; };
    double m1 = integrate_1d(f_lo, 0.0, 1.0, qs, right_log).value +
                integrate_1d(f_hi, 1.0, kInfinity, qs, left_log).value;

    // method 2: fold the tail onto (0,1); the small-k cancellation switches
    // to its series -4k/3 + 26 k^3/15
    auto f_sym = [&](double k) {
        double base = k * k / (k * k + 1.0) * L(k);
        double folded;
        if (k < 1e-2) {
            folded = -4.0 * k / 3.0 + 26.0 * k * k * k / 15.0;
        } else {
            folded = L(1.0 / k) / (k * k * (1.0 + k * k)) - 2.0 / k;
        }
        return base + folded;
    };
    double m2 = integrate_1d(f_sym, 0.0, 1.0, qs, right_log).value;

    rep.numeric = m1;
    rep.numeric_alt = m2;
    rep.flagged = std::abs(m1 - m2) > 1e-8;
    rep.finalize();
    return rep;
}

ConstantReport dot_correlation_constant() {
    ConstantReport rep;
    rep.name = "dot_correlation_constant";
    rep.method = "recombination 2/pi^2 - (G/3 - 2 gamma/pi^2)/2";
    rep.closed_form = 0.1455;
    double G = catalan();
    double gam = gamma_series(400);
    rep.numeric = 2.0 / (M_PI * M_PI) - 0.5 * (G / 3.0 - 2.0 * gam / (M_PI * M_PI));
    rep.finalize();
    return rep;
}

std::vector<ConstantReport> all_constants(const QuadratureSpec& spec, bool include_slow) {
    std::vector<ConstantReport> out;
    if (include_slow) {
        ConstantReport i2 = i2_report(spec);
        out.push_back(i2);
        out.push_back(ec1_star_dot(spec, &i2));
    } else {
        ConstantReport quick;
        QuadratureSpec fast = spec;
        fast.max_evals = std::min<std::uint64_t>(spec.max_evals, 20000);
        quick = i2_report(fast);
        out.push_back(quick);
        out.push_back(ec1_star_dot(fast, &quick));
    }
    out.push_back(xlog_coefficient());
    BPair b = b_constants(spec);
    out.push_back(b.b3);
    out.push_back(b.b2);
    out.push_back(a_d_constant(2));
    out.push_back(a_d_constant(3));
    out.push_back(j_exchange(spec));
    out.push_back(c_appendix(spec));
    out.push_back(dot_correlation_constant());
    return out;
}

} // namespace tfhx
