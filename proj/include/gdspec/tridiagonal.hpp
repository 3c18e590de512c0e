#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "gdspec/errors.hpp"

namespace gdspec {

/// Eigenvalues of a symmetric tridiagonal matrix by the implicit-shift QL
/// iteration (the classic tql scheme of Bowdler, Martin, Reinsch and
/// Wilkinson). diag has n entries, off has n-1 (off[i] couples rows i and
/// i+1). Returns eigenvalues sorted descending.
inline std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag,
                                                   std::vector<double> off) {
    const int n = static_cast<int>(diag.size());
    if (n == 0) return {};
    if (static_cast<int>(off.size()) + 1 != n)
        throw DimensionMismatch("off-diagonal must have n-1 entries");
    std::vector<double>& d = diag;
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    std::copy(off.begin(), off.end(), e.begin()); // e[n-1] stays 0

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            // Find a negligible off-diagonal that splits off the block at l.
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 2.3e-16 * dd) break;
            }
            if (m != l) {
                if (iter++ == 50) throw NoConvergence("tridiagonal QL did not converge");
                // Wilkinson-style shift from the leading 2x2 of the block.
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) { // underflow: deflate and restart this block
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end(), std::greater<>());
    return d;
}

} // namespace gdspec
