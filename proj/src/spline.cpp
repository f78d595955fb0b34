#include "tfhx/spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tfhx {
namespace {

constexpr double kG3x[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
constexpr double kG3w[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

// Thomas algorithm; diag/sub/sup are overwritten.
void solve_tridiagonal(std::vector<double>& sub, std::vector<double>& diag,
                       std::vector<double>& sup, std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        double w = sub[i] / diag[i - 1];
        diag[i] -= w * sup[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
}

} // namespace

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n != y_.size() || n < 2) throw std::invalid_argument("CubicSpline: bad sizes");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(x_[i + 1] > x_[i])) throw std::invalid_argument("CubicSpline: nodes must increase");
    m_.assign(n, 0.0);
    if (n < 4) {
        if (n == 3) {
            // single parabola: m is the constant second derivative
            double h0 = x_[1] - x_[0], h1 = x_[2] - x_[1];
            double s0 = (y_[1] - y_[0]) / h0, s1 = (y_[2] - y_[1]) / h1;
            double m = 2.0 * (s1 - s0) / (h0 + h1);
            m_.assign(n, m);
        }
        return; // n == 2: linear, m = 0
    }

    // interior continuity rows for the moments m_1 .. m_{n-2}; the endpoint
    // moments are eliminated through the not-a-knot conditions
    //   h1 m0 = (h0 + h1) m1 - h0 m2,   h_{n-3} m_{n-1} = (h_{n-3}+h_{n-2}) m_{n-2} - h_{n-2} m_{n-3}
    const std::size_t ni = n - 2;
    std::vector<double> sub(ni, 0.0), diag(ni, 0.0), sup(ni, 0.0), rhs(ni, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double hm = x_[i] - x_[i - 1];
        double hp = x_[i + 1] - x_[i];
        sub[i - 1] = hm / 6.0;
        diag[i - 1] = (hm + hp) / 3.0;
        sup[i - 1] = hp / 6.0;
        rhs[i - 1] = (y_[i + 1] - y_[i]) / hp - (y_[i] - y_[i - 1]) / hm;
    }
    {
        double h0 = x_[1] - x_[0], h1 = x_[2] - x_[1];
        diag[0] += sub[0] * (h0 + h1) / h1;
        sup[0] -= sub[0] * h0 / h1;
        sub[0] = 0.0;
    }
    {
        double hm = x_[n - 1] - x_[n - 2], hmm = x_[n - 2] - x_[n - 3];
        diag[ni - 1] += sup[ni - 1] * (hmm + hm) / hmm;
        sub[ni - 1] -= sup[ni - 1] * hm / hmm;
        sup[ni - 1] = 0.0;
    }
    solve_tridiagonal(sub, diag, sup, rhs);
    for (std::size_t i = 0; i < ni; ++i) m_[i + 1] = rhs[i];
    {
        double h0 = x_[1] - x_[0], h1 = x_[2] - x_[1];
        m_[0] = ((h0 + h1) * m_[1] - h0 * m_[2]) / h1;
        double hm = x_[n - 1] - x_[n - 2], hmm = x_[n - 2] - x_[n - 3];
        m_[n - 1] = ((hmm + hm) * m_[n - 2] - hm * m_[n - 3]) / hmm;
    }
}

std::size_t CubicSpline::locate(double t) const {
    if (t <= x_.front()) return 0;
    if (t >= x_.back()) return x_.size() - 2;
    auto it = std::upper_bound(x_.begin(), x_.end(), t);
    return static_cast<std::size_t>(it - x_.begin()) - 1;
}

double CubicSpline::operator()(double t) const {
    std::size_t i = locate(t);
    double h = x_[i + 1] - x_[i];
    double a = (x_[i + 1] - t) / h;
    double b = (t - x_[i]) / h;
    return a * y_[i] + b * y_[i + 1] +
           ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double t) const {
    std::size_t i = locate(t);
    double h = x_[i + 1] - x_[i];
    double a = (x_[i + 1] - t) / h;
    double b = (t - x_[i]) / h;
    return (y_[i + 1] - y_[i]) / h +
           ((3.0 * b * b - 1.0) * m_[i + 1] - (3.0 * a * a - 1.0) * m_[i]) * h / 6.0;
}

double CubicSpline::integral(double a, double b) const {
    if (b < a) return -integral(b, a);
    double lo = std::max(a, x_.front());
    double hi = std::min(b, x_.back());
    if (!(hi > lo)) return 0.0;
    std::size_t i0 = locate(lo);
    std::size_t i1 = locate(hi);
    double total = 0.0;
    for (std::size_t i = i0; i <= i1; ++i) {
        double ca = std::max(lo, x_[i]);
        double cb = std::min(hi, x_[i + 1]);
        if (!(cb > ca)) continue;
        double mid = 0.5 * (ca + cb), half = 0.5 * (cb - ca);
        for (int g = 0; g < 3; ++g) total += half * kG3w[g] * (*this)(mid + half * kG3x[g]);
    }
    return total;
}

std::vector<double> spline_weights(const std::vector<double>& x, int measure_power) {
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("spline_weights: need >= 2 nodes");
    if (measure_power < 0 || measure_power > 2)
        throw std::invalid_argument("spline_weights: measure_power in {0,1,2}");
    std::vector<double> w(n, 0.0);
    std::vector<double> unit(n, 0.0);
    // cardinal splines decay like 0.27^{|i-j|}; cells beyond the window are
    // below roundoff
    const std::size_t kWin = 48;
    for (std::size_t j = 0; j < n; ++j) {
        unit[j] = 1.0;
        CubicSpline s(x, unit);
        unit[j] = 0.0;
        std::size_t i_lo = (j > kWin) ? j - kWin : 0;
        std::size_t i_hi = std::min(n - 1, j + kWin);
        double acc = 0.0;
        for (std::size_t i = i_lo; i < i_hi; ++i) {
            double mid = 0.5 * (x[i] + x[i + 1]), half = 0.5 * (x[i + 1] - x[i]);
            for (int g = 0; g < 3; ++g) {
                double t = mid + half * kG3x[g];
                double mp = 1.0;
                for (int p = 0; p < measure_power; ++p) mp *= t;
                acc += half * kG3w[g] * s(t) * mp;
            }
        }
        w[j] = acc;
    }
    return w;
}

} // namespace tfhx
