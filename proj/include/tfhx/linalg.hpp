#pragma once

#include <vector>

namespace tfhx {

/// Row-major dense matrix, just big enough for the Nystrom systems here.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::vector<double> multiply(const std::vector<double>& v) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

/// LU with partial pivoting. Throws std::runtime_error on (near-)singularity,
/// reporting the pivot-ratio conditioning proxy. Returns the solution and,
/// via cond_proxy, max|pivot|/min|pivot|.
std::vector<double> lu_solve(Matrix a, std::vector<double> b, double* cond_proxy = nullptr);

} // namespace tfhx
