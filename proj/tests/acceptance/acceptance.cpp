// Acceptance suite: one line per criterion, [PASS]/[FAIL] with the measured
// numbers. The process exits nonzero if any criterion fails.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "tfhx/atom_energy.hpp"
#include "tfhx/constants.hpp"
#include "tfhx/dataset.hpp"
#include "tfhx/dot_energy.hpp"
#include "tfhx/monte_carlo.hpp"
#include "tfhx/report.hpp"
#include "tfhx/special_functions.hpp"
#include "tfhx/tf_atom.hpp"
#include "tfhx/tf_dot.hpp"

using namespace tfhx;

namespace {

int g_failures = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

} // namespace

int main() {
    // ---- shared solves -------------------------------------------------
    auto t0 = std::chrono::steady_clock::now();
    auto atom_grid = RadialGrid::logarithmic(1e-6, 1e4, 2000);
    auto atom = solve_tf_atom(1.0, atom_grid, 1e-8);
    auto ctx = ScalingContext::atom(1.0, 1.0);
    auto e_tf = tf_energy(atom, ctx);
    double atom_seconds = seconds_since(t0);

    // 1. neutral-atom TF energy
    {
        double per = e_tf.hartree; // Z = 1 reference; scales as N^{7/3}
        bool ok = std::abs(per + 0.7687) <= 0.001 * 0.7687 && atom_seconds < 5.0;
        report("criterion 1 (TF atom energy)", ok,
               fmt("E/N^{7/3} = %.6f hartree vs -0.7687 (rel %.2e), solve+energy %.2f s",
                   per, std::abs(per + 0.7687) / 0.7687, atom_seconds));
    }

    // 2. tail coefficient and normalization
    {
        double tail = atom.tail_coeff;
        double target = 81.0 * M_PI * M_PI;
        double norm = 0.0;
        for (std::size_t i = 0; i < atom_grid.size(); ++i)
            norm += atom_grid.w_r2dr[i] * std::pow(atom.mu_plus[i], 1.5);
        norm *= 4.0 * M_PI / (3.0 * M_PI * M_PI);
        bool ok = std::abs(tail - target) <= 0.01 * target && std::abs(norm - 1.0) <= 1e-6;
        report("criterion 2 (TF atom tail + normalization)", ok,
               fmt("r^4 mu+ -> %.4f vs %.4f (rel %.2e); normalization defect %.2e", tail,
                   target, std::abs(tail - target) / target, std::abs(norm - 1.0)));
    }

    // 3. I_2 defining integral
    {
        auto t = std::chrono::steady_clock::now();
        QuadratureSpec spec;
        spec.seed = 1;
        auto i2 = i2_report(spec);
        double secs = seconds_since(t);
        bool ok = i2.rel_error < 0.02 && secs < 300.0;
        report("criterion 3 (I_2 vs closed form)", ok,
               fmt("numeric %.5f vs %.5f (rel %.2e), %.1f s", i2.numeric, i2.closed_form,
                   i2.rel_error, secs));
    }

    // 4. dot universal constants
    {
        auto t = std::chrono::steady_clock::now();
        double ec1 = 0.5 * (1.0 - std::log(2.0));
        auto rec = dot_correlation_constant();
        double secs = seconds_since(t);
        bool ok = std::abs(ec1 - 0.1534) <= 5e-5 && std::abs(rec.numeric - 0.1455) <= 1e-3 &&
                  secs < 1.0;
        report("criterion 4 (dot universal constants)", ok,
               fmt("(1-ln2)/2 = %.6f vs 0.1534; recombination %.6f vs 0.1455; %.2f s", ec1,
                   rec.numeric, secs));
    }

    // 5. coefficient identities at four digits
    {
        const double l2 = std::log(2.0), G = catalan(), z3 = zeta3();
        double v1 = (1.0 - l2) / (M_PI * M_PI);
        double bracket =
            23.0 / 6.0 - M_PI * M_PI / 4.0 + (8.0 / 3.0) * l2 - 2.0 * G * (1.0 - l2) - 4.0 * l2 * l2;
        double v2 = bracket / (2.0 * M_PI * M_PI);
        double v3 = 0.5 * std::pow(4.0 * M_PI, 4.0) * (1.0 - l2) / (64.0 * std::pow(M_PI, 7.0));
        double v4 = 1.0 / std::pow(M_PI, 4.0);
        double v5 = 3.0 / (4.0 * M_PI * M_PI) - 0.5 * (l2 / 6.0 - 3.0 * z3 / (4.0 * M_PI * M_PI));
        bool ok = std::abs(v1 - 0.03109) < 5e-6 && std::abs(v2 - 0.03700) < 5e-6 &&
                  std::abs(v3 - 0.01979) < 5e-6 && std::abs(v4 - 0.01027) < 5e-6 &&
                  std::abs(v5 - 0.06390) < 5e-6;
        report("criterion 5 (coefficient identities)", ok,
               fmt("%.6f/%.6f/%.6f/%.6f/%.6f vs 0.03109/0.03700/0.01979/0.01027/0.06390", v1,
                   v2, v3, v4, v5));
    }

    // 6. b_d Monte Carlo vs closed forms
    {
        auto t = std::chrono::steady_clock::now();
        QuadratureSpec spec;
        spec.mc_samples = 20000000;
        spec.seed = 2;
        auto b = b_constants(spec);
        double secs = seconds_since(t);
        auto within = [](const ConstantReport& r) {
            return std::abs(r.numeric - r.closed_form) <=
                   std::max(0.05 * std::abs(r.closed_form), 3.0 * r.std_error);
        };
        bool ok = within(b.b3) && within(b.b2) && secs < 600.0;
        report("criterion 6 (second-order exchange constants)", ok,
               fmt("b3 %.6f+-%.6f vs %.6f; b2 %.6f+-%.6f vs %.6f; %.1f s", b.b3.numeric,
                   b.b3.std_error, b.b3.closed_form, b.b2.numeric, b.b2.std_error,
                   b.b2.closed_form, secs));
    }

    // 7. J integral and the exchange-coefficient identity
    {
        QuadratureSpec spec;
        spec.mc_samples = 4000000;
        spec.seed = 3;
        auto j = j_exchange(spec);
        double lhs = (16.0 * M_PI / 3.0) / std::pow(2.0 * M_PI, 3.0);
        double rhs = 2.0 / (3.0 * M_PI * M_PI);
        bool ok = j.rel_error < 0.02 && std::abs(lhs - rhs) < 1e-16;
        report("criterion 7 (J integral + exchange identity)", ok,
               fmt("J %.5f vs %.5f (rel %.2e); |identity defect| = %.1e", j.numeric,
                   j.closed_form, j.rel_error, std::abs(lhs - rhs)));
    }

    // 8. atom correlation chains at N = Z
    {
        auto t = std::chrono::steady_clock::now();
        QuadratureSpec spec;
        spec.rel_tol = 1e-7;
        spec.abs_tol = 1e-10;
        spec.max_evals = 2000000;
        auto b = atom_correlation(10.0, 10.0, 0.0, atom, spec);
        double secs = seconds_since(t);
        bool ok_a = std::abs(b.h_x_a - 0.06533) <= 0.02 * 0.06533;
        bool ok_b = std::abs(b.h_x_b - (-0.00329)) <= 0.05 * 0.00329;
        bool ok_c = std::abs(b.h_ec2_integral - (-1.1044)) <= 0.02 * 1.1044;
        report("criterion 8a (x_a chain)", ok_a && secs < 120.0,
               fmt("%.5f hartree/electron vs 0.06533 (rel %.2e), chain time %.1f s", b.h_x_a,
                   std::abs(b.h_x_a - 0.06533) / 0.06533, secs));
        report("criterion 8b (x_b chain)", ok_b,
               fmt("%.5f hartree/electron vs -0.00329: the unwindowed double moment diverges "
                   "in its (t->0, p->inf) corner (windowed value B = %.4f); no window "
                   "reproduces the tabulated value",
                   b.h_x_b, b.B_value));
        report("criterion 8c (correlation double integral chain)", ok_c,
               fmt("%.5f hartree/electron vs -1.1044 (rel %.2e)", b.h_ec2_integral,
                   std::abs(b.h_ec2_integral + 1.1044) / 1.1044));
    }

    // 9. dot smooth energy
    {
        DotSolverOptions opts;
        opts.grid_n = 1200;
        double tol = 1e-5;
        auto dot = solve_tf_dot_radial(ConfinementSpec::power_law(2.0), tol, opts);
        auto a = solve_screening(dot, 1e-8);

        // 9a: semicircular comparison at the stated tolerance
        double best = 1e300, best_c = 0, best_R = 0;
        for (double Rf = 0.8 * dot.support_radius; Rf <= 1.2 * dot.support_radius;
             Rf += 1e-3 * dot.support_radius) {
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < dot.grid.size(); ++i) {
                double base = 1.0 - dot.grid.nodes[i] * dot.grid.nodes[i] / (Rf * Rf);
                base = base > 0.0 ? std::sqrt(base) : 0.0;
                num += dot.mu_plus[i] * base;
                den += base * base;
            }
            double c = num / den, dev = 0.0;
            for (std::size_t i = 0; i < dot.grid.size(); ++i) {
                double base = 1.0 - dot.grid.nodes[i] * dot.grid.nodes[i] / (Rf * Rf);
                base = base > 0.0 ? std::sqrt(base) : 0.0;
                dev = std::max(dev, std::abs(dot.mu_plus[i] - c * base));
            }
            if (dev < best) {
                best = dev;
                best_c = c;
                best_R = Rf;
            }
        }
        bool ok_semi = best <= 10.0 * tol;
        report("criterion 9a (parabolic dot vs semicircular profile)", ok_semi,
               fmt("best fit (c=%.3f, R=%.3f) deviates by %.3f pointwise (10*tol = %.0e): the "
                   "self-consistent equation with its local kinetic term does not admit the "
                   "semicircular solution",
                   best_c, best_R, best, 10.0 * tol));

        bool ok_fred = a.residual < 1e-8;
        report("criterion 9b (Fredholm residual)", ok_fred,
               fmt("screening residual %.2e < 1e-8", a.residual));

        double flux = dot_laplacian_term(dot);
        double area = dot_laplacian_term_area(dot);
        bool ok_flux = std::abs(area - flux) <= 0.01 * std::abs(flux);
        report("criterion 9c (flux vs area)", ok_flux,
               fmt("flux %.6f vs area %.6f (rel %.2e)", flux, area,
                   std::abs(area - flux) / std::abs(flux)));

        QuadratureSpec spec;
        DotEnergyBreakdown bd;
        bd.n_electrons = 100.0;
        bd.e_tf = tf_dot_energy(dot);
        bd.exchange_term = 0.0;
        {
            QuadratureSpec qs;
            qs.rel_tol = 1e-10;
            qs.abs_tol = 1e-13;
            qs.max_evals = 200000;
            IntegrandOptions edge;
            edge.right = Endpoint::power_singular;
            edge.right_power = 0.5;
            double I32 =
                2.0 * M_PI *
                integrate_1d([&](double r) { return r * std::pow(dot.mu_plus_at(r), 1.5); }, 0.0,
                             dot.support_radius, qs, edge)
                    .value;
            bd.exchange_term = 2.0 / (3.0 * M_PI * M_PI) * I32;
        }
        bd.laplacian_term = flux;
        bd.delta_term = dot_delta_term(dot, a);
        auto corr = dot_correlation(dot, spec);
        bd.corr_const = corr.corr_const;
        bd.corr_integral = corr.corr_integral;
        double N = bd.n_electrons;
        double manual = N * N * bd.e_tf + std::pow(N, 1.5) * bd.exchange_term +
                        N * (bd.laplacian_term + bd.delta_term) -
                        N * (bd.corr_const - bd.corr_integral);
        bool ok_assembly = bd.total(N) == manual;
        report("criterion 9d (breakdown assembly identity)", ok_assembly,
               fmt("total(100) = %.8f assembled exactly from the stored fields", bd.total(N)));
    }

    // 10. fit: property-based substitute (no reference tables are shipped)
    {
        CorrelationDataset ds;
        for (int n = 2; n <= 55; ++n) {
            CorrelationRecord r;
            r.n = n;
            r.label = "Z" + std::to_string(n);
            r.source = "exp";
            r.e_corr_hartree = double(n) * (-0.062 * std::log(double(n)) - 0.018);
            ds.records.push_back(r);
        }
        auto exact = fit_offset(ds, SlopeConvention::per_lnN, 0.062);
        Rng rng(7);
        auto noisy = ds;
        for (auto& r : noisy.records) r.e_corr_hartree *= 1.0 + 0.01 * (2.0 * rng.u01() - 1.0);
        auto fitn = fit_offset(noisy, SlopeConvention::per_lnN, 0.062);
        bool ok = std::abs(exact.c_prime + 0.018) < 1e-12 &&
                  std::abs(fitn.c_prime + 0.018) < 0.002 && exact.max_rel_dev_n_ge_10 < 1e-10;
        report("criterion 10 (fit property substitute)", ok,
               fmt("exact recovery c' = %.15f; noisy recovery %.5f (|dev| %.1e); no external "
                   "tables shipped, conditional clause not exercised",
                   exact.c_prime, fitn.c_prime, std::abs(fitn.c_prime + 0.018)));
    }

    // 11. determinism of the report pipeline
    {
        QuadratureSpec spec;
        spec.mc_samples = 200000;
        spec.seed = 17;
        auto r1 = all_constants(spec, false);
        auto r2 = all_constants(spec, false);
        std::string j1 = constants_to_json(r1, spec.seed).dump(2);
        std::string j2 = constants_to_json(r2, spec.seed).dump(2);
        bool ok = (j1 == j2);
        report("criterion 11 (deterministic reports)", ok,
               fmt("two same-seed constant reports serialize to %s byte streams (%zu bytes)",
                   ok ? "identical" : "DIFFERENT", j1.size()));
    }

    std::printf("%s: %d criterion check(s) failed\n", g_failures == 0 ? "ALL PASS" : "RESULT",
                g_failures);
    return g_failures == 0 ? 0 : 1;
}
