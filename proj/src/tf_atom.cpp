#include "tfhx/tf_atom.hpp"

#include <algorithm>
#include <cmath>

#include "tfhx/common.hpp"
#include "tfhx/ode.hpp"

namespace tfhx {
namespace {

constexpr double kSeriesStart = 1e-10;
constexpr double kMatchPoint = 35.0; // forward/backward matching abscissa

const double kLambda = 0.5 * (std::sqrt(73.0) - 7.0); // subleading tail exponent

std::array<double, 2> rhs(double s, const std::array<double, 2>& y) {
    double p = y[0] > 0.0 ? y[0] : 0.0;
    return {y[1], p * std::sqrt(p) / std::sqrt(s)};
}

std::array<double, 2> series_start(double slope) {
    // phi = 1 + slope s + (4/3) s^{3/2} + (2/5) slope s^{5/2} + (1/3) s^3 + ...
    double s = kSeriesStart;
    double rt = std::sqrt(s);
    double phi = 1.0 + slope * s + (4.0 / 3.0) * s * rt + 0.4 * slope * s * s * rt +
                 (1.0 / 3.0) * s * s * s;
    double dphi = slope + 2.0 * rt + slope * s * rt + s * s;
    return {phi, dphi};
}

enum class Fate { hits_zero, diverges };

struct Trajectory {
    std::vector<OdePoint> pts;
    Fate fate;
};

Trajectory shoot(double slope, double s_end) {
    OdeOptions opts;
    opts.rel_tol = 1e-12;
    opts.abs_tol = 1e-16;
    opts.initial_step = 1e-8;
    opts.max_step = 0.25;
    auto stop = [](double, const std::array<double, 2>& y) { return y[0] <= 0.0 || y[1] > 0.0; };
    auto pts = integrate_ode2(rhs, kSeriesStart, s_end, series_start(slope), opts, stop);
    Fate fate = (pts.back().y0 <= 0.0) ? Fate::hits_zero : Fate::diverges;
    return {std::move(pts), fate};
}

/// slope of the neutral separatrix, by bisection on the trajectory fate
double neutral_slope() {
    double lo = -1.62, hi = -1.55; // lo hits zero, hi diverges
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        if (shoot(mid, 2000.0).fate == Fate::hits_zero)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-18 * std::abs(lo)) break;
    }
    return 0.5 * (lo + hi);
}

struct IonShot {
    double s0;      // zero of phi
    double dphi_s0; // slope there
    std::vector<OdePoint> pts;
};

/// integrate a zero-hitting slope and refine the crossing with a local spline
IonShot ion_shot(double slope) {
    auto tr = shoot(slope, 4000.0);
    if (tr.fate != Fate::hits_zero)
        throw NonConvergence("tf atom: trajectory failed to reach zero", 1.0);
    const auto& pts = tr.pts;
    std::size_t k = pts.size() - 1; // first point with y0 <= 0
    std::size_t lo = (k >= 6) ? k - 6 : 0;
    std::vector<double> xs, phis, dphis;
    for (std::size_t i = lo; i <= k; ++i) {
        xs.push_back(pts[i].t);
        phis.push_back(pts[i].y0);
        dphis.push_back(pts[i].y1);
    }
    CubicSpline sphi(xs, phis), sdphi(xs, dphis);
    double a = xs[xs.size() - 2], b = xs.back();
    for (int i = 0; i < 200; ++i) {
        double m = 0.5 * (a + b);
        if (sphi(m) > 0.0)
            a = m;
        else
            b = m;
    }
    double s0 = 0.5 * (a + b);
    return {s0, sdphi(s0), pts};
}

} // namespace

double TFAtomSolution::mu_at(double r) const {
    if (!(r > 0.0)) throw std::domain_error("mu_at: r must be > 0");
    double s = r / b_;
    if (std::isfinite(support_radius) && r >= support_radius)
        return mu_global * (1.0 - support_radius / r);
    if (s < s_min) {
        // series region: phi ~ 1 - B s + (4/3) s^{3/2}
        double phi0 = 1.0 - initial_slope * s + (4.0 / 3.0) * s * std::sqrt(s);
        return phi0 / r;
    }
    if (s > s_max) {
        // beyond the stored trajectory: leading tail
        return tail_coeff / (r * r * r * r);
    }
    return phi(s) / r;
}

double TFAtomSolution::mu_plus_at(double r) const {
    double v = mu_at(r);
    return v > 0.0 ? v : 0.0;
}

double TFAtomSolution::mu_plus_prime_at(double r) const {
    if (!(r > 0.0)) throw std::domain_error("mu_plus_prime_at: r must be > 0");
    if (std::isfinite(support_radius) && r >= support_radius) return 0.0;
    double s = r / b_;
    double p, dp;
    if (s < s_min) {
        double rt = std::sqrt(s);
        p = 1.0 - initial_slope * s + (4.0 / 3.0) * s * rt;
        dp = -initial_slope + 2.0 * rt;
    } else if (s > s_max) {
        return -4.0 * tail_coeff / (r * r * r * r * r);
    } else {
        p = phi(s);
        dp = phi_prime(s);
    }
    return dp / (b_ * r) - p / (r * r);
}

TFAtomSolution solve_tf_atom(double q, const RadialGrid& grid, double tol) {
    if (!(q > 0.0) || q > 1.0)
        throw std::domain_error("solve_tf_atom: q must lie in (0,1] (positive ions only)");
    if (!(tol > 0.0)) throw std::domain_error("solve_tf_atom: tol must be > 0");

    TFAtomSolution sol;
    sol.q = q;
    sol.grid = grid;
    sol.b_ = std::pow(0.75 * M_PI, 2.0 / 3.0);
    const double b = sol.b_;

    std::vector<OdePoint> traj;
    if (q == 1.0) {
        double slope = neutral_slope();
        sol.initial_slope = -slope;
        sol.mu_global = 0.0;
        sol.support_radius = kInfinity;

        // clean forward leg
        OdeOptions fopts;
        fopts.rel_tol = 1e-12;
        fopts.abs_tol = 1e-16;
        fopts.max_step = 0.05;
        auto fwd = integrate_ode2(rhs, kSeriesStart, kMatchPoint, series_start(slope), fopts);

        // backward leg from the far asymptote, shooting on the correction
        // amplitude to match the forward value at the junction
        double s_end = 1.1 * grid.nodes.back() / b;
        double phi_match = fwd.back().y0;
        auto back_value = [&](double amp, std::vector<OdePoint>* keep) {
            double se = s_end;
            double base = 144.0 / (se * se * se);
            double corr = amp * std::pow(se, -kLambda);
            std::array<double, 2> y0 = {
                base * (1.0 + corr),
                base * (-3.0 * (1.0 + corr) - kLambda * corr) / se};
            OdeOptions bopts;
            bopts.rel_tol = 1e-12;
            bopts.abs_tol = 1e-22;
            bopts.initial_step = 1.0;
            bopts.max_step = s_end;
            auto pts = integrate_ode2(rhs, s_end, kMatchPoint, y0, bopts);
            if (keep) *keep = pts;
            return pts.back().y0 - phi_match;
        };
        double a0 = -12.0, a1 = -14.0;
        double f0 = back_value(a0, nullptr), f1 = back_value(a1, nullptr);
        double amp = a1;
        for (int it = 0; it < 40; ++it) {
            if (f1 == f0) break;
            double a2 = a1 - f1 * (a1 - a0) / (f1 - f0);
            a0 = a1;
            f0 = f1;
            a1 = a2;
            f1 = back_value(a1, nullptr);
            amp = a1;
            if (std::abs(f1) < 1e-16 * std::abs(phi_match)) break;
        }
        std::vector<OdePoint> bwd;
        back_value(amp, &bwd);
        std::reverse(bwd.begin(), bwd.end());

        traj = fwd;
        for (const auto& p : bwd)
            if (p.t > traj.back().t * (1.0 + 1e-12)) traj.push_back(p);

        sol.tail_coeff = 144.0 * b * b * b; // refined below by the far fit
        // extrapolated limit of r^4 mu from the stored far trajectory:
        // fit phi s^3 / 144 = c0 + c1 s^-lambda over the last decade
        {
            double sum1 = 0, sx = 0, sy = 0, sxy = 0, sxx = 0;
            for (const auto& p : bwd) {
                if (p.t < 0.1 * s_end) continue;
                double xfit = std::pow(p.t, -kLambda);
                double yfit = p.y0 * p.t * p.t * p.t / 144.0;
                sum1 += 1;
                sx += xfit;
                sy += yfit;
                sxy += xfit * yfit;
                sxx += xfit * xfit;
            }
            double det = sum1 * sxx - sx * sx;
            if (det > 0) {
                double c0 = (sxx * sy - sx * sxy) / det;
                sol.tail_coeff = 144.0 * b * b * b * c0;
            }
        }
    } else {
        // ion: bisect the slope so that -s0 phi'(s0) = 1 - q
        double target = 1.0 - q;
        double lo_slope = -30.0; // far below the separatrix: shallow zero, zeta ~ 1
        double hi_slope = neutral_slope() * (1.0 + 1e-9);
        auto zeta = [&](double slope) {
            IonShot shot = ion_shot(slope);
            return -shot.s0 * shot.dphi_s0;
        };
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo_slope + hi_slope);
            double z = zeta(mid);
            if (z > target)
                lo_slope = mid; // too ionized: raise the slope
            else
                hi_slope = mid;
            if (hi_slope - lo_slope < 1e-15 * std::abs(lo_slope)) break;
        }
        double slope = 0.5 * (lo_slope + hi_slope);
        IonShot shot = ion_shot(slope);
        sol.initial_slope = -slope;
        sol.support_radius = b * shot.s0;
        sol.mu_global = shot.dphi_s0 / b;
        traj = std::move(shot.pts);
        while (!traj.empty() && traj.back().y0 <= 0.0) traj.pop_back();
        traj.push_back({shot.s0, 0.0, shot.dphi_s0});
        sol.tail_coeff = std::numeric_limits<double>::quiet_NaN();
    }

    // splines of the trajectory (thinned: adaptive steps can be very dense)
    std::vector<double> xs, ph, dph;
    double last = -1.0;
    for (const auto& p : traj) {
        if (p.t <= last * (1.0 + 1e-10)) continue;
        xs.push_back(p.t);
        ph.push_back(p.y0);
        dph.push_back(p.y1);
        last = p.t;
    }
    sol.phi = CubicSpline(xs, ph);
    sol.phi_prime = CubicSpline(xs, dph);
    sol.s_min = xs.front();
    sol.s_max = xs.back();

    // profile on the requested grid
    sol.mu_plus.resize(grid.size());
    sol.mu_plus_prime.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        sol.mu_plus[i] = sol.mu_plus_at(grid.nodes[i]);
        sol.mu_plus_prime[i] = sol.mu_plus_prime_at(grid.nodes[i]);
    }
    sol.origin_coeff = grid.nodes.front() * sol.mu_plus.front();

    // integral-form residual at log-spaced probes:
    // mu(r) =? mu + 1/r - (4/(3pi)) [ (1/r) int_0^r s^2 mu+^{3/2} ds + int_r^inf s mu+^{3/2} ds ]
    QuadratureSpec qs;
    qs.rel_tol = 1e-11;
    qs.abs_tol = 1e-13;
    qs.max_evals = 400000;
    double r_hi = std::isfinite(sol.support_radius) ? sol.support_radius : grid.nodes.back();
    auto mu32_r2 = [&](double r) { return r * r * std::pow(sol.mu_plus_at(r), 1.5); };
    auto mu32_r1 = [&](double r) { return r * std::pow(sol.mu_plus_at(r), 1.5); };
    double tail_beyond_grid = 0.0;
    if (!std::isfinite(sol.support_radius)) {
        double T = sol.tail_coeff;
        tail_beyond_grid = std::pow(T, 1.5) / (4.0 * std::pow(grid.nodes.back(), 4.0));
    }
    double worst = 0.0;
    const int kProbes = 48;
    for (int i = 0; i < kProbes; ++i) {
        double fr = double(i) / double(kProbes - 1);
        double r = grid.nodes.front() *
                   std::pow(grid.nodes.back() / grid.nodes.front(), 0.02 + 0.96 * fr);
        IntegrandOptions left_half;
        left_half.left = Endpoint::power_singular;
        left_half.left_power = 0.5;
        double inner = integrate_1d(mu32_r2, 0.0, std::min(r, r_hi), qs, left_half).value;
        double outer = 0.0;
        if (r < r_hi) {
            outer = integrate_1d(mu32_r1, r, r_hi, qs).value + tail_beyond_grid;
        }
        double conv = (4.0 / (3.0 * M_PI)) * (inner / r + outer);
        double lhs = sol.mu_at(r);
        double rhsv = sol.mu_global + 1.0 / r - conv;
        worst = std::max(worst, std::abs(lhs - rhsv));
    }
    sol.residual = worst;
    if (!(worst <= tol))
        throw NonConvergence("solve_tf_atom: self-consistency residual above tolerance", worst);
    return sol;
}

double integrated_dos(const TFAtomSolution& sol, const ScalingContext& ctx, double e) {
    if (e > sol.mu_global + 1e-14)
        throw std::domain_error("integrated_dos(atom): classically allowed region unbounded for e > mu");
    double shift = e - sol.mu_global;
    QuadratureSpec qs;
    qs.rel_tol = 1e-9;
    qs.abs_tol = 1e-12;
    qs.max_evals = 400000;
    double r_hi = std::isfinite(sol.support_radius) ? sol.support_radius : sol.grid.nodes.back();
    auto f = [&](double r) {
        double loc = sol.mu_at(r) + shift;
        return loc > 0.0 ? r * r * std::pow(loc, 1.5) : 0.0;
    };
    IntegrandOptions opts;
    opts.left = Endpoint::power_singular;
    opts.left_power = 0.5;
    double I = integrate_1d(f, 0.0, r_hi, qs, opts).value;
    if (!std::isfinite(sol.support_radius) && shift == 0.0) {
        double T = sol.tail_coeff;
        I += std::pow(T, 1.5) / (3.0 * std::pow(sol.grid.nodes.back(), 3.0));
    }
    return ctx.Z * ctx.alpha_d * 4.0 * M_PI * I;
}

TfEnergy tf_energy(const TFAtomSolution& sol, const ScalingContext& ctx, double tol) {
    if (!(sol.residual <= tol))
        throw NonConvergence("tf_energy(atom): profile residual above tolerance", sol.residual);
    QuadratureSpec qs;
    qs.rel_tol = 1e-11;
    qs.abs_tol = 1e-14;
    qs.max_evals = 800000;
    double r_hi = std::isfinite(sol.support_radius) ? sol.support_radius : sol.grid.nodes.back();
    IntegrandOptions opts;
    opts.left = Endpoint::power_singular;
    opts.left_power = 0.5;
    auto f_v = [&](double r) { return r * std::pow(sol.mu_plus_at(r), 1.5); };
    auto f_52 = [&](double r) { return r * r * std::pow(sol.mu_plus_at(r), 2.5); };
    double I_v = -4.0 * M_PI * integrate_1d(f_v, 0.0, r_hi, qs, opts).value;
    double I_52 = 4.0 * M_PI * integrate_1d(f_52, 0.0, r_hi, qs, opts).value;
    double per_z = 0.5 * sol.q * sol.mu_global + ctx.alpha_d * (I_v + 0.2 * I_52);
    double scaled = std::pow(ctx.Z, ctx.energy_z_power()) * per_z;
    return {scaled, ctx.to_hartree(scaled)};
}

} // namespace tfhx
