#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace tfhx {

/// Thrown when an iterative solver exhausts its budget; carries the last residual.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, double residual)
        : std::runtime_error(what + " (last residual " + format_short(residual) + ")"),
          residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    static std::string format_short(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3g", v);
        return buf;
    }
    double residual_;
};

/// File-system failures; the CLI maps these to their own exit code.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when an integrand returns a non-finite value at an interior abscissa.
class IntegrandError : public std::domain_error {
public:
    IntegrandError(double abscissa, const std::string& what)
        : std::domain_error(what + " at x = " + std::to_string(abscissa)), abscissa_(abscissa) {}
    double abscissa() const noexcept { return abscissa_; }

private:
    double abscissa_;
};

/// Neumaier compensated accumulator. Reduction order is fixed by the caller,
/// keeping results reproducible to the last bit.
class KahanSum {
public:
    void add(double x) noexcept {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace tfhx
