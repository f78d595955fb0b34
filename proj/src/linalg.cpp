#include "tfhx/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace tfhx {

std::vector<double> Matrix::multiply(const std::vector<double>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("Matrix::multiply: size mismatch");
    std::vector<double> out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        double acc = 0.0;
        const double* row = &a_[i * cols_];
        for (std::size_t j = 0; j < cols_; ++j) acc += row[j] * v[j];
        out[i] = acc;
    }
    return out;
}

std::vector<double> lu_solve(Matrix a, std::vector<double> b, double* cond_proxy) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw std::invalid_argument("lu_solve: shape mismatch");
    double piv_max = 0.0, piv_min = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            double v = std::abs(a(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            std::swap(b[k], b[p]);
        }
        double piv = a(k, k);
        double ap = std::abs(piv);
        piv_max = std::max(piv_max, ap);
        piv_min = (k == 0) ? ap : std::min(piv_min, ap);
        if (ap <= 1e-14 * std::max(1.0, piv_max)) {
            if (cond_proxy) *cond_proxy = (piv_min > 0.0) ? piv_max / piv_min : INFINITY;
            throw std::runtime_error("lu_solve: singular system (pivot ratio " +
                                     std::to_string(piv_min > 0 ? piv_max / piv_min : INFINITY) +
                                     ")");
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            double f = a(i, k) / piv;
            if (f == 0.0) continue;
            a(i, k) = f;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        double acc = b[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= a(i, j) * b[j];
        b[i] = acc / a(i, i);
    }
    if (cond_proxy) *cond_proxy = (piv_min > 0.0) ? piv_max / piv_min : INFINITY;
    return b;
}

} // namespace tfhx
