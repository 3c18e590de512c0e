#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "gdspec/errors.hpp"
#include "gdspec/rational.hpp"

namespace gdspec {

template <typename T>
struct FieldEps {
    static T value() { return T(0); }
};
template <>
struct FieldEps<double> {
    static double value() { return 1e-11; }
};

/// minimize c.x subject to A x = b, x >= 0.
template <typename T>
struct LpProblem {
    std::vector<std::vector<T>> a;
    std::vector<T> b;
    std::vector<T> c;
};

template <typename T>
struct LpSolution {
    std::vector<T> x;
    T objective{};
    std::vector<int> basis;
};

/// Two-phase tableau simplex with Bland's rule. Exact when T is Rational.
template <typename T>
LpSolution<T> solve_lp(const LpProblem<T>& prob) {
    const std::size_t m = prob.a.size();
    const std::size_t n = prob.c.size();
    if (prob.b.size() != m) throw DimensionMismatch("lp: b size");
    for (const auto& row : prob.a)
        if (row.size() != n) throw DimensionMismatch("lp: row size");
    const T eps = FieldEps<T>::value();

    // tableau [A | I_artificial | rhs], rhs made nonnegative
    std::vector<std::vector<T>> t(m, std::vector<T>(n + m + 1, T(0)));
    for (std::size_t i = 0; i < m; ++i) {
        bool flip = prob.b[i] < T(0);
        for (std::size_t j = 0; j < n; ++j) t[i][j] = flip ? -prob.a[i][j] : prob.a[i][j];
        t[i][n + i] = T(1);
        t[i][n + m] = flip ? -prob.b[i] : prob.b[i];
    }
    std::vector<int> basis(m);
    std::vector<char> in_basis(n + m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        basis[i] = static_cast<int>(n + i);
        in_basis[n + i] = 1;
    }

    auto pivot = [&](std::size_t pr, std::size_t pc) {
        T inv = T(1) / t[pr][pc];
        for (auto& v : t[pr]) v = v * inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == pr) continue;
            T factor = t[i][pc];
            if (factor == T(0)) continue;
            for (std::size_t j = 0; j <= n + m; ++j) t[i][j] -= factor * t[pr][j];
        }
        in_basis[static_cast<std::size_t>(basis[pr])] = 0;
        in_basis[pc] = 1;
        basis[pr] = static_cast<int>(pc);
    };

    auto run = [&](const std::vector<T>& cost, std::size_t ncols) {
        for (;;) {
            int enter = -1;
            for (std::size_t j = 0; j < ncols; ++j) {
                if (in_basis[j]) continue;
                T red = cost[j];
                for (std::size_t i = 0; i < m; ++i)
                    red -= cost[static_cast<std::size_t>(basis[i])] * t[i][j];
                if (red < -eps) {
                    enter = static_cast<int>(j);
                    break;
                }
            }
            if (enter < 0) return;
            int leave = -1;
            T best{};
            for (std::size_t i = 0; i < m; ++i) {
                if (t[i][static_cast<std::size_t>(enter)] <= eps) continue;
                T ratio = t[i][n + m] / t[i][static_cast<std::size_t>(enter)];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis[i] < basis[static_cast<std::size_t>(leave)])) {
                    leave = static_cast<int>(i);
                    best = ratio;
                }
            }
            if (leave < 0) throw SolverTolerance("lp unbounded");
            pivot(static_cast<std::size_t>(leave), static_cast<std::size_t>(enter));
        }
    };

    std::vector<T> phase1(n + m, T(0));
    for (std::size_t j = n; j < n + m; ++j) phase1[j] = T(1);
    run(phase1, n + m);
    T infeas = T(0);
    for (std::size_t i = 0; i < m; ++i)
        if (static_cast<std::size_t>(basis[i]) >= n) infeas += t[i][n + m];
    if (infeas > eps + eps && infeas > T(0)) throw SolverTolerance("lp infeasible");

    // push leftover artificials out of the basis where a real column allows it
    for (std::size_t i = 0; i < m; ++i) {
        if (static_cast<std::size_t>(basis[i]) < n) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (in_basis[j]) continue;
            if (t[i][j] > eps || t[i][j] < -eps) {
                pivot(i, j);
                break;
            }
        }
    }

    std::vector<T> phase2(n + m, T(0));
    for (std::size_t j = 0; j < n; ++j) phase2[j] = prob.c[j];
    run(phase2, n);

    LpSolution<T> sol;
    sol.x.assign(n, T(0));
    for (std::size_t i = 0; i < m; ++i)
        if (static_cast<std::size_t>(basis[i]) < n)
            sol.x[static_cast<std::size_t>(basis[i])] = t[i][n + m];
    sol.objective = T(0);
    for (std::size_t j = 0; j < n; ++j) sol.objective += prob.c[j] * sol.x[j];
    sol.basis = basis;
    return sol;
}

/// rows g_i . x <= h_i; sign constraints must be listed as rows too.
struct InequalitySystem {
    std::vector<std::vector<double>> g;
    std::vector<double> h;
};

namespace detail {

inline std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> a,
                                                       std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < n; ++i)
            if (std::abs(a[i][col]) > std::abs(a[piv][col])) piv = i;
        if (std::abs(a[piv][col]) < 1e-10) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t i = col + 1; i < n; ++i) {
            double f = a[i][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
            b[i] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

} // namespace detail

/// Brute-force LP check: visit every vertex of {x : Gx <= h} (each choice of
/// dim-many active rows) and take the best feasible objective.
inline double enumerate_minimum(const InequalitySystem& sys, const std::vector<double>& cost,
                                std::vector<double>* argmin = nullptr) {
    const std::size_t nv = cost.size();
    const std::size_t nr = sys.g.size();
    if (nr < nv) throw DimensionMismatch("enumeration needs >= dim rows");
    std::vector<std::size_t> idx(nv);
    for (std::size_t i = 0; i < nv; ++i) idx[i] = i;
    double best = std::numeric_limits<double>::infinity();

    for (;;) {
        std::vector<std::vector<double>> a(nv);
        std::vector<double> b(nv);
        for (std::size_t i = 0; i < nv; ++i) {
            a[i] = sys.g[idx[i]];
            b[i] = sys.h[idx[i]];
        }
        if (auto x = detail::solve_square(std::move(a), std::move(b))) {
            bool ok = true;
            for (std::size_t rrow = 0; rrow < nr && ok; ++rrow) {
                double lhs = 0.0;
                for (std::size_t j = 0; j < nv; ++j) lhs += sys.g[rrow][j] * (*x)[j];
                ok = lhs <= sys.h[rrow] + 1e-9;
            }
            if (ok) {
                double obj = 0.0;
                for (std::size_t j = 0; j < nv; ++j) obj += cost[j] * (*x)[j];
                if (obj < best) {
                    best = obj;
                    if (argmin) *argmin = *x;
                }
            }
        }
        // next combination
        std::size_t k = nv;
        while (k-- > 0) {
            if (idx[k] + (nv - k) < nr) {
                ++idx[k];
                for (std::size_t j = k + 1; j < nv; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (k == 0) {
                if (!std::isfinite(best)) throw SolverTolerance("no feasible vertex");
                return best;
            }
        }
    }
}

} // namespace gdspec
