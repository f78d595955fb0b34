#include "tfhx/tf_dot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "tfhx/common.hpp"
#include "tfhx/coulomb2d.hpp"

namespace tfhx {

ConfinementSpec ConfinementSpec::power_law(double p, double strength) {
    ConfinementSpec c;
    c.kind = Kind::power_law;
    c.exponent = p;
    c.strength = strength;
    char buf[64];
    if (strength == 1.0)
        std::snprintf(buf, sizeof buf, "r^%g", p);
    else
        std::snprintf(buf, sizeof buf, "%g*r^%g", strength, p);
    c.description = buf;
    c.validate();
    return c;
}

ConfinementSpec ConfinementSpec::tabulated(std::vector<double> r, std::vector<double> v,
                                           std::string description) {
    ConfinementSpec c;
    c.kind = Kind::tabulated;
    c.description = std::move(description);
    if (r.size() != v.size() || r.size() < 4)
        throw std::domain_error("ConfinementSpec: tabulated needs >= 4 samples");
    c.table_ = CubicSpline(r, v);
    c.r_samples = std::move(r);
    c.v_samples = std::move(v);
    // extend beyond the table with the fitted end power law
    std::size_t n = c.r_samples.size();
    double r1 = c.r_samples[n - 2], r2 = c.r_samples[n - 1];
    double v1 = c.v_samples[n - 2], v2 = c.v_samples[n - 1];
    if (!(v2 > 0.0) || !(v1 > 0.0) || !(v2 > v1))
        throw std::domain_error("ConfinementSpec: tabulated tail must be positive increasing");
    c.tail_power_ = std::log(v2 / v1) / std::log(r2 / r1);
    c.tail_coeff_ = v2 / std::pow(r2, c.tail_power_);
    c.validate();
    return c;
}

double ConfinementSpec::operator()(double r) const {
    if (r < 0.0) throw std::domain_error("ConfinementSpec: negative radius");
    if (kind == Kind::power_law) return strength * std::pow(r, exponent);
    if (r <= r_samples.back()) {
        if (r <= r_samples.front()) return table_(r_samples.front());
        return table_(r);
    }
    return tail_coeff_ * std::pow(r, tail_power_);
}

double ConfinementSpec::derivative(double r) const {
    if (kind == Kind::power_law)
        return (r == 0.0 && exponent < 1.0) ? 0.0 : strength * exponent * std::pow(r, exponent - 1.0);
    if (r <= r_samples.front()) return 0.0;
    if (r <= r_samples.back()) return table_.derivative(r);
    return tail_coeff_ * tail_power_ * std::pow(r, tail_power_ - 1.0);
}

void ConfinementSpec::validate() const {
    if (kind == Kind::power_law) {
        if (!(exponent > 0.0) || !(strength > 0.0))
            throw std::domain_error("ConfinementSpec: power law must grow (p > 0, strength > 0)");
        return;
    }
    if (!(tail_power_ > 0.0))
        throw std::domain_error("ConfinementSpec: tabulated potential is not confining");
}

double TFDotSolution::mu_at(double r) const {
    if (r < 0.0) throw std::domain_error("TFDotSolution::mu_at: negative radius");
    if (r > grid.nodes.back())
        throw std::domain_error("TFDotSolution::mu_at: beyond the stored grid");
    return mu_spline(std::max(r, grid.nodes.front()));
}

double TFDotSolution::mu_plus_at(double r) const {
    if (r >= support_radius) return 0.0;
    double v = mu_at(r);
    return v > 0.0 ? v : 0.0;
}

namespace {

double support_r_max(const ConfinementSpec& conf, double v_target) {
    double r = 1.0;
    for (int i = 0; i < 200 && conf(r) < v_target; ++i) r *= 1.3;
    return r;
}

} // namespace

TFDotSolution solve_tf_dot_radial(const ConfinementSpec& conf, double tol,
                                  const DotSolverOptions& opts) {
    conf.validate();
    if (!(tol > 0.0)) throw std::domain_error("solve_tf_dot_radial: tol must be > 0");

    TFDotSolution sol;
    sol.confinement = conf;

    double v0 = conf(0.0);
    double mu_hi = v0 + 1.0;
    double r_max = opts.r_max;
    const double eta = opts.mixing;
    if (!(eta > 0.0) || eta > 1.0) throw std::domain_error("solve_tf_dot_radial: mixing in (0,1]");

    for (int domain_pass = 0; domain_pass < 6; ++domain_pass) {
        if (opts.r_max <= 0.0) r_max = support_r_max(conf, 2.0 * (mu_hi - v0) + v0 + 2.0);
        RadialGrid grid = RadialGrid::uniform_r2(r_max, opts.grid_n);
        Matrix M = coulomb_matrix_2d(grid.nodes);
        const std::size_t n = grid.size();
        std::vector<double> V(n);
        for (std::size_t i = 0; i < n; ++i) V[i] = conf(grid.nodes[i]);

        std::vector<double> mup(n, 0.0), g(n, 0.0);
        auto inner_solve = [&](double mu) {
            double defect = 0.0;
            for (std::size_t it = 0; it < opts.max_inner; ++it) {
                std::vector<double> cv = M.multiply(mup);
                defect = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    g[i] = mu - V[i] - cv[i] / (2.0 * M_PI);
                    double neu = g[i] > 0.0 ? g[i] : 0.0;
                    defect = std::max(defect, std::abs(neu - mup[i]));
                    mup[i] = (1.0 - eta) * mup[i] + eta * neu;
                }
                if (defect < 0.05 * tol) {
                    // snap: one undamped sweep keeps mu_plus consistent with g
                    std::vector<double> cv2 = M.multiply(mup);
                    for (std::size_t i = 0; i < n; ++i) {
                        g[i] = mu - V[i] - cv2[i] / (2.0 * M_PI);
                        mup[i] = g[i] > 0.0 ? g[i] : 0.0;
                    }
                    return defect;
                }
            }
            throw NonConvergence("solve_tf_dot_radial: fixed point stalled", defect);
        };
        auto charge = [&]() {
            double Q = 0.0;
            for (std::size_t i = 0; i < n; ++i) Q += grid.w_rdr[i] * mup[i];
            return Q;
        };

        // bracket mu
        double mu_lo = v0;
        mu_hi = v0 + 1.0;
        std::fill(mup.begin(), mup.end(), 0.0);
        int guard = 0;
        while (true) {
            inner_solve(mu_hi);
            if (charge() > 1.0) break;
            mu_hi = v0 + 2.0 * (mu_hi - v0);
            if (++guard > 60) throw NonConvergence("solve_tf_dot_radial: cannot bracket mu", 1.0);
        }
        for (std::size_t it = 0; it < opts.max_outer; ++it) {
            double mu_mid = 0.5 * (mu_lo + mu_hi);
            inner_solve(mu_mid);
            if (charge() > 1.0)
                mu_hi = mu_mid;
            else
                mu_lo = mu_mid;
        }
        double mu = mu_hi; // slight overshoot side keeps Q >= 1 - tiny
        inner_solve(mu);

        // support edge must stay inside the domain
        std::size_t last_pos = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mup[i] > 0.0) last_pos = i;
        if (last_pos + 8 >= n && opts.r_max <= 0.0) {
            mu_hi = 2.0 * (mu - v0) + v0 + 1.0;
            continue; // enlarge the domain and redo
        }

        sol.grid = grid;
        sol.mu_global = mu;
        sol.mu_of_r = g;
        sol.mu_spline = CubicSpline(grid.nodes, g);

        // locate R by the sign change of mu(r)
        double R = grid.nodes[last_pos];
        {
            double lo = grid.nodes[last_pos];
            double hi = grid.nodes[std::min(n - 1, last_pos + 1)];
            if (sol.mu_spline(hi) < 0.0) {
                for (int i = 0; i < 200; ++i) {
                    double mid = 0.5 * (lo + hi);
                    if (sol.mu_spline(mid) > 0.0)
                        lo = mid;
                    else
                        hi = mid;
                }
                R = 0.5 * (lo + hi);
            }
        }
        sol.support_radius = R;
        sol.mu_plus = mup;
        for (std::size_t i = 0; i < n; ++i)
            if (grid.nodes[i] >= R || sol.mu_plus[i] < 0.0) sol.mu_plus[i] = 0.0;

        // W'(R) by a local polynomial fit of W = V + induced around R
        {
            QuadratureSpec qs;
            qs.rel_tol = 1e-10;
            qs.abs_tol = 1e-12;
            qs.max_evals = 200000;
            auto dens = [&](double s) { return sol.mu_plus_at(s); };
            const int kSten = 7;
            double delta = 0.004 * R;
            std::vector<double> xs(kSten), ws(kSten);
            for (int k = 0; k < kSten; ++k) {
                double rk = R + delta * (k - kSten / 2);
                xs[k] = rk;
                ws[k] = conf(rk) + coulomb_radial_2d(dens, R, rk, qs) / (2.0 * M_PI);
            }
            CubicSpline wfit(xs, ws);
            sol.W_prime_at_R = wfit.derivative(R);
        }

        // independent residual: pointwise kernel quadrature on the interpolated
        // profile vs the stored local chemical potential
        {
            QuadratureSpec qs;
            qs.rel_tol = 1e-9;
            qs.abs_tol = 1e-11;
            qs.max_evals = 200000;
            auto dens = [&](double s) { return sol.mu_plus_at(s); };
            double worst = 0.0;
            const int kProbes = 24;
            for (int i = 0; i < kProbes; ++i) {
                double r = r_max * (0.015 + 0.93 * double(i) / double(kProbes - 1));
                double conv = coulomb_radial_2d(dens, R, r, qs) / (2.0 * M_PI);
                double rhs = mu - conf(r) - conv;
                worst = std::max(worst, std::abs(sol.mu_spline(r) - rhs));
            }
            sol.residual = worst;
        }
        if (!(sol.residual <= tol))
            throw NonConvergence("solve_tf_dot_radial: residual above tolerance", sol.residual);
        return sol;
    }
    throw NonConvergence("solve_tf_dot_radial: domain expansion failed", 1.0);
}

double integrated_dos(const TFDotSolution& sol, const ScalingContext& ctx, double e) {
    double shift = e - sol.mu_global;
    double r_hi = sol.grid.nodes.back();
    // classically allowed boundary: mu(r) + shift = 0
    double turn = sol.support_radius;
    if (shift > 0.0) {
        if (sol.mu_spline(r_hi) + shift > 0.0)
            throw std::domain_error("integrated_dos(dot): allowed region exceeds the stored grid");
        double lo = sol.support_radius, hi = r_hi;
        for (int i = 0; i < 200; ++i) {
            double mid = 0.5 * (lo + hi);
            if (sol.mu_spline(mid) + shift > 0.0)
                lo = mid;
            else
                hi = mid;
        }
        turn = 0.5 * (lo + hi);
    }
    QuadratureSpec qs;
    qs.rel_tol = 1e-10;
    qs.abs_tol = 1e-12;
    qs.max_evals = 200000;
    auto f = [&](double r) {
        double loc = sol.mu_spline(std::max(r, sol.grid.nodes.front())) + shift;
        return loc > 0.0 ? r * loc : 0.0;
    };
    double I = integrate_1d(f, 0.0, std::max(turn, 1e-12), qs).value;
    return ctx.Z * 0.5 * I; // (alpha_2/eps^2) * 2pi = N/2 on the r dr measure
}

double tf_dot_energy(const TFDotSolution& sol, double tol) {
    if (!(sol.residual <= tol))
        throw NonConvergence("tf_dot_energy: profile residual above tolerance", sol.residual);
    QuadratureSpec qs;
    qs.rel_tol = 1e-10;
    qs.abs_tol = 1e-13;
    qs.max_evals = 200000;
    auto f = [&](double r) { return r * sol.confinement(r) * sol.mu_plus_at(r); };
    double I = integrate_1d(f, 0.0, sol.support_radius, qs).value;
    return 0.5 * (sol.mu_global + I);
}

} // namespace tfhx
