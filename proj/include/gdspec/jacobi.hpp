#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "gdspec/errors.hpp"
#include "gdspec/linalg.hpp"

namespace gdspec {

struct EigenDecomposition {
    std::vector<double> values; // descending
    Matrix vectors;             // column j pairs with values[j]
};

/// Cyclic Jacobi for dense symmetric matrices. Sweeps rotate every
/// off-diagonal pair in turn; stops once the off-diagonal Frobenius norm
/// drops below 1e-12 times the matrix norm.
inline EigenDecomposition dense_sym_eigen(Matrix m, bool want_vectors = true) {
    if (m.rows != m.cols) throw DimensionMismatch("dense_sym_eigen needs a square matrix");
    const std::size_t n = m.rows;
    Matrix v = Matrix::identity(want_vectors ? n : 0);
    const double scale = std::max(m.frobenius_norm(), 1e-300);
    const double target = 1e-12 * scale;

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += m(i, j) * m(i, j);
        return std::sqrt(2.0 * s);
    };

    int sweeps = 0;
    while (off_norm() > target) {
        if (++sweeps > 100) throw NoConvergence("jacobi sweep limit exceeded");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = m(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
                double t = std::copysign(1.0, theta) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
                if (want_vectors) {
                    for (std::size_t k = 0; k < n; ++k) {
                        double vkp = v(k, p), vkq = v(k, q);
                        v(k, p) = c * vkp - s * vkq;
                        v(k, q) = s * vkp + c * vkq;
                    }
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return m(a, a) > m(b, b); });

    EigenDecomposition out;
    out.values.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.values[j] = m(order[j], order[j]);
    if (want_vectors) {
        out.vectors = Matrix(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = v(k, order[j]);
    }
    return out;
}

struct GroupedSpectrum {
    std::vector<double> values; // one per distinct eigenvalue, descending
    std::vector<std::int64_t> mults;
};

/// Collapse a sorted eigenvalue list into distinct values with
/// multiplicities, grouping anything closer than tol_rel times the
/// spectral scale.
inline GroupedSpectrum group_eigenvalues(const std::vector<double>& values,
                                         double tol_rel = 1e-7) {
    GroupedSpectrum g;
    if (values.empty()) return g;
    double scale = 0.0;
    for (double x : values) scale = std::max(scale, std::abs(x));
    const double tol = tol_rel * std::max(scale, 1.0);
    double sum = values[0];
    std::int64_t count = 1;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (std::abs(values[i] - values[i - 1]) <= tol) {
            sum += values[i];
            ++count;
        } else {
            g.values.push_back(sum / static_cast<double>(count));
            g.mults.push_back(count);
            sum = values[i];
            count = 1;
        }
    }
    g.values.push_back(sum / static_cast<double>(count));
    g.mults.push_back(count);
    return g;
}

} // namespace gdspec
