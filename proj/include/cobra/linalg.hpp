#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "cobra/error.hpp"

namespace cobra {

/// Row-major dense matrix of doubles.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
    double* row(std::size_t r) noexcept { return data_.data() + r * cols_; }
    const double* row(std::size_t r) const noexcept { return data_.data() + r * cols_; }

    std::vector<double> multiply(const std::vector<double>& x) const {
        std::vector<double> y(rows_, 0.0);
        for (std::size_t r = 0; r < rows_; ++r) {
            double s = 0.0;
            for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c) * x[c];
            y[r] = s;
        }
        return y;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

/// Solves A x = b by Gaussian elimination with partial pivoting. A is taken by value and
/// destroyed in the process.
inline std::vector<double> solve_linear(DenseMatrix a, std::vector<double> b) {
    const std::size_t n = a.rows();
    require(a.cols() == n && b.size() == n, ErrorKind::InvalidParams, "solve_linear: shape mismatch");
    double scale = 0.0;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) scale = std::max(scale, std::abs(a(r, c)));
    const double tiny = 1e-13 * (scale > 0 ? scale : 1.0);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        require(std::abs(a(piv, col)) > tiny, ErrorKind::Singular, "matrix is singular to working precision");
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(piv, c), a(col, c));
            std::swap(b[piv], b[col]);
        }
        const double* prow = a.row(col);
        const double inv = 1.0 / prow[col];
        for (std::size_t r = col + 1; r < n; ++r) {
            double* rr = a.row(r);
            const double f = rr[col] * inv;
            if (f == 0.0) continue;
            rr[col] = 0.0;
            for (std::size_t c = col + 1; c < n; ++c) rr[c] -= f * prow[c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        const double* rr = a.row(i);
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= rr[c] * x[c];
        x[i] = s / rr[i];
    }
    return x;
}

/// ‖A x − b‖∞
inline double residual_inf(const DenseMatrix& a, const std::vector<double>& x, const std::vector<double>& b) {
    const auto ax = a.multiply(x);
    double r = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) r = std::max(r, std::abs(ax[i] - b[i]));
    return r;
}

}  // namespace cobra
