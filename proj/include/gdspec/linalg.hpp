#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace gdspec {

/// Dense row-major matrix of doubles.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), a(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (double v : a) s += v * v;
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : a) m = std::max(m, std::abs(v));
        return m;
    }
};

inline Matrix operator*(const Matrix& x, const Matrix& y) {
    assert(x.cols == y.rows);
    Matrix z(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            double xik = x(i, k);
            if (xik == 0.0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) z(i, j) += xik * y(k, j);
        }
    return z;
}

inline Matrix operator+(const Matrix& x, const Matrix& y) {
    assert(x.rows == y.rows && x.cols == y.cols);
    Matrix z = x;
    for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
    return z;
}

inline Matrix operator-(const Matrix& x, const Matrix& y) {
    assert(x.rows == y.rows && x.cols == y.cols);
    Matrix z = x;
    for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] -= y.a[i];
    return z;
}

inline Matrix operator*(double s, const Matrix& x) {
    Matrix z = x;
    for (double& v : z.a) v *= s;
    return z;
}

inline std::vector<double> operator*(const Matrix& m, const std::vector<double>& v) {
    assert(m.cols == v.size());
    std::vector<double> r(m.rows, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) r[i] += m(i, j) * v[j];
    return r;
}

inline Matrix kronecker(const Matrix& x, const Matrix& y) {
    Matrix z(x.rows * y.rows, x.cols * y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j) {
            double xij = x(i, j);
            if (xij == 0.0) continue;
            for (std::size_t k = 0; k < y.rows; ++k)
                for (std::size_t l = 0; l < y.cols; ++l)
                    z(i * y.rows + k, j * y.cols + l) = xij * y(k, l);
        }
    return z;
}

inline double norm_inf(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

} // namespace gdspec
