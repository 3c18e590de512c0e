#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "gdspec/errors.hpp"
#include "gdspec/graph.hpp"
#include "gdspec/linalg.hpp"
#include "gdspec/rational.hpp"
#include "gdspec/simplex.hpp"
#include "gdspec/spectral.hpp"

namespace gdspec {

struct MixingCoefficients {
    Matrix d; // d(i,k) = coeff(i,k)/n_k - 1, all <= 0
    std::vector<std::vector<Rational>> exact;
    bool all_exact = false;
};

inline MixingCoefficients mixing_coefficients(const SpectralTable& t) {
    const std::size_t d = t.diameter();
    MixingCoefficients mc;
    mc.d = Matrix(d + 1, d + 1);
    for (std::size_t i = 0; i <= d; ++i)
        for (std::size_t k = 0; k <= d; ++k) {
            mc.d(i, k) = t.coeff(i, k) / static_cast<double>(t.shells.n[k]) - 1.0;
            if (mc.d(i, k) > 1e-12)
                throw SolverTolerance("mixing coefficient above zero: " + t.ia.to_string());
        }
    if (t.all_integral) {
        mc.exact.resize(d + 1);
        for (std::size_t i = 0; i <= d; ++i) {
            mc.exact[i].resize(d + 1);
            for (std::size_t k = 0; k <= d; ++k)
                mc.exact[i][k] = t.coeff_exact[i][k] / Rational(t.shells.n[k]) - Rational(1);
        }
        mc.all_exact = true;
    }
    return mc;
}

struct MarkovSolution {
    double value = 0.0;       // nu_max (dtmc) or spectral gap (ctmc)
    std::vector<double> mu;   // length d+1; mu[0] is the holding weight (dtmc) or unused (ctmc)
    std::vector<std::size_t> active_rows;
    std::optional<Rational> value_exact;
    std::optional<std::vector<Rational>> mu_exact;
};

namespace detail {

template <typename T>
T abs_value(const T& x) {
    return x < T(0) ? T(-x) : x;
}

/// max_i>=1 |1 + sum_k D[i][k] mu_k|
template <typename T>
T dtmc_objective(const std::vector<std::vector<T>>& d, const std::vector<T>& mu_tail,
                 std::size_t d_prime) {
    T worst(0);
    for (std::size_t i = 1; i < d.size(); ++i) {
        T v(1);
        for (std::size_t k = 1; k <= d_prime; ++k) v += d[i][k] * mu_tail[k - 1];
        if (abs_value(v) > worst) worst = abs_value(v);
    }
    return worst;
}

template <typename T>
std::vector<std::vector<T>> coefficient_rows(const MixingCoefficients& mc);

template <>
inline std::vector<std::vector<double>> coefficient_rows<double>(const MixingCoefficients& mc) {
    std::vector<std::vector<double>> rows(mc.d.rows, std::vector<double>(mc.d.cols));
    for (std::size_t i = 0; i < mc.d.rows; ++i)
        for (std::size_t k = 0; k < mc.d.cols; ++k) rows[i][k] = mc.d(i, k);
    return rows;
}

template <>
inline std::vector<std::vector<Rational>> coefficient_rows<Rational>(const MixingCoefficients& mc) {
    return mc.exact;
}

/// LP for the discrete problem: variables mu_1..mu_d', t, then slacks.
template <typename T>
LpSolution<T> dtmc_lp(const std::vector<std::vector<T>>& d, std::size_t d_prime) {
    const std::size_t rows = d.size() - 1; // eigenrows i >= 1
    const std::size_t nv = d_prime + 1 + 2 * rows + 1;
    LpProblem<T> lp;
    lp.c.assign(nv, T(0));
    lp.c[d_prime] = T(1); // minimize t
    for (std::size_t i = 1; i < d.size(); ++i) {
        std::vector<T> up(nv, T(0)), dn(nv, T(0));
        for (std::size_t k = 1; k <= d_prime; ++k) {
            up[k - 1] = d[i][k];
            dn[k - 1] = -d[i][k];
        }
        up[d_prime] = T(-1);
        dn[d_prime] = T(-1);
        up[d_prime + 1 + (i - 1)] = T(1);
        dn[d_prime + 1 + rows + (i - 1)] = T(1);
        lp.a.push_back(std::move(up));
        lp.b.push_back(T(-1));
        lp.a.push_back(std::move(dn));
        lp.b.push_back(T(1));
    }
    std::vector<T> sum_row(nv, T(0));
    for (std::size_t k = 0; k < d_prime; ++k) sum_row[k] = T(1);
    sum_row[nv - 1] = T(1);
    lp.a.push_back(std::move(sum_row));
    lp.b.push_back(T(1));
    return solve_lp(lp);
}

/// LP for the continuous problem: variables rho_1..rho_d', t, slacks.
template <typename T>
LpSolution<T> ctmc_lp(const std::vector<std::vector<T>>& d, std::size_t d_prime) {
    const std::size_t rows = d.size() - 1;
    const std::size_t nv = d_prime + 1 + rows;
    LpProblem<T> lp;
    lp.c.assign(nv, T(0));
    lp.c[d_prime] = T(-1); // maximize t
    for (std::size_t i = 1; i < d.size(); ++i) {
        std::vector<T> row(nv, T(0));
        for (std::size_t k = 1; k <= d_prime; ++k) row[k - 1] = d[i][k];
        row[d_prime] = T(1);
        row[d_prime + 1 + (i - 1)] = T(1);
        lp.a.push_back(std::move(row));
        lp.b.push_back(T(0));
    }
    std::vector<T> sum_row(nv, T(0));
    for (std::size_t k = 0; k < d_prime; ++k) sum_row[k] = T(1);
    lp.a.push_back(std::move(sum_row));
    lp.b.push_back(T(1));
    return solve_lp(lp);
}

inline void enumeration_cross_check(const MixingCoefficients& mc, std::size_t d_prime,
                                    double objective, bool ctmc) {
    const std::size_t rows = mc.d.rows - 1;
    const std::size_t nv = d_prime + 1;
    InequalitySystem sys;
    std::vector<double> cost(nv, 0.0);
    if (!ctmc) {
        cost[d_prime] = 1.0;
        for (std::size_t i = 1; i <= rows; ++i) {
            std::vector<double> up(nv, 0.0), dn(nv, 0.0);
            for (std::size_t k = 1; k <= d_prime; ++k) {
                up[k - 1] = mc.d(i, k);
                dn[k - 1] = -mc.d(i, k);
            }
            up[d_prime] = -1.0;
            dn[d_prime] = -1.0;
            sys.g.push_back(std::move(up));
            sys.h.push_back(-1.0);
            sys.g.push_back(std::move(dn));
            sys.h.push_back(1.0);
        }
    } else {
        cost[d_prime] = -1.0;
        for (std::size_t i = 1; i <= rows; ++i) {
            std::vector<double> row(nv, 0.0);
            for (std::size_t k = 1; k <= d_prime; ++k) row[k - 1] = mc.d(i, k);
            row[d_prime] = 1.0;
            sys.g.push_back(std::move(row));
            sys.h.push_back(0.0);
        }
    }
    for (std::size_t k = 0; k < nv; ++k) {
        std::vector<double> row(nv, 0.0);
        row[k] = -1.0;
        sys.g.push_back(std::move(row));
        sys.h.push_back(0.0);
    }
    std::vector<double> sum_row(nv, 0.0);
    for (std::size_t k = 0; k < d_prime; ++k) sum_row[k] = 1.0;
    sys.g.push_back(sum_row);
    sys.h.push_back(1.0);
    if (ctmc) {
        for (double& v : sum_row) v = -v;
        sys.g.push_back(sum_row);
        sys.h.push_back(-1.0);
    }
    double enumerated = enumerate_minimum(sys, cost);
    double lp_obj = ctmc ? -objective : objective;
    if (std::abs(enumerated - lp_obj) > 1e-8)
        throw SolverTolerance("simplex and vertex enumeration disagree");
}

} // namespace detail

inline MarkovSolution solve_dtmc(const SpectralTable& t, std::size_t d_prime) {
    const std::size_t d = t.diameter();
    if (d_prime < 1 || d_prime > d) throw OutOfRange("d' must lie in [1, d]");
    auto mc = mixing_coefficients(t);

    auto rows = detail::coefficient_rows<double>(mc);
    auto lp = detail::dtmc_lp(rows, d_prime);
    MarkovSolution sol;
    sol.value = lp.objective;
    sol.mu.assign(d + 1, 0.0);
    double tail = 0.0;
    for (std::size_t k = 1; k <= d_prime; ++k) {
        sol.mu[k] = std::max(0.0, lp.x[k - 1]);
        tail += sol.mu[k];
    }
    sol.mu[0] = std::max(0.0, 1.0 - tail);
    for (std::size_t i = 1; i <= d; ++i) {
        double v = 1.0;
        for (std::size_t k = 1; k <= d_prime; ++k) v += mc.d(i, k) * sol.mu[k];
        if (std::abs(v) >= sol.value - 1e-9) sol.active_rows.push_back(i);
    }

    if (mc.all_exact) {
        auto exact_rows = detail::coefficient_rows<Rational>(mc);
        auto xlp = detail::dtmc_lp(exact_rows, d_prime);
        if (std::abs(to_double(xlp.objective) - sol.value) > 1e-8)
            throw SolverTolerance("exact and floating dtmc objectives disagree");
        sol.value = to_double(xlp.objective);
        sol.value_exact = xlp.objective;
        std::vector<Rational> mu(d + 1, Rational(0));
        Rational xtail(0);
        for (std::size_t k = 1; k <= d_prime; ++k) {
            mu[k] = xlp.x[k - 1];
            xtail += mu[k];
        }
        mu[0] = Rational(1) - xtail;
        for (std::size_t k = 0; k <= d; ++k) sol.mu[k] = to_double(mu[k]);
        sol.mu_exact = std::move(mu);
    }
    if (d_prime <= 6) detail::enumeration_cross_check(mc, d_prime, sol.value, false);
    return sol;
}

inline MarkovSolution solve_ctmc(const SpectralTable& t, std::size_t d_prime) {
    const std::size_t d = t.diameter();
    if (d_prime < 1 || d_prime > d) throw OutOfRange("d' must lie in [1, d]");
    auto mc = mixing_coefficients(t);

    auto rows = detail::coefficient_rows<double>(mc);
    auto lp = detail::ctmc_lp(rows, d_prime);
    MarkovSolution sol;
    sol.value = -lp.objective; // lp minimizes -t
    sol.mu.assign(d + 1, 0.0);
    for (std::size_t k = 1; k <= d_prime; ++k) sol.mu[k] = std::max(0.0, lp.x[k - 1]);
    for (std::size_t i = 1; i <= d; ++i) {
        double v = 0.0;
        for (std::size_t k = 1; k <= d_prime; ++k) v -= mc.d(i, k) * sol.mu[k];
        if (v <= sol.value + 1e-9) sol.active_rows.push_back(i);
    }

    if (mc.all_exact) {
        auto exact_rows = detail::coefficient_rows<Rational>(mc);
        auto xlp = detail::ctmc_lp(exact_rows, d_prime);
        Rational gap = -xlp.objective;
        if (std::abs(to_double(gap) - sol.value) > 1e-8)
            throw SolverTolerance("exact and floating ctmc objectives disagree");
        sol.value = to_double(gap);
        sol.value_exact = gap;
        std::vector<Rational> rho(d + 1, Rational(0));
        for (std::size_t k = 1; k <= d_prime; ++k) rho[k] = xlp.x[k - 1];
        for (std::size_t k = 0; k <= d; ++k) sol.mu[k] = to_double(rho[k]);
        sol.mu_exact = std::move(rho);
    }
    if (d_prime <= 6) detail::enumeration_cross_check(mc, d_prime, sol.value, true);
    return sol;
}

/// mu proportional to the shell sizes kills every nonprincipal eigenvalue.
inline MarkovSolution uniform_solution_check(const SpectralTable& t) {
    const std::size_t d = t.diameter();
    auto mc = mixing_coefficients(t);
    MarkovSolution sol;
    std::vector<Rational> mu(d + 1);
    for (std::size_t k = 0; k <= d; ++k)
        mu[k] = Rational(t.shells.n[k]) / Rational(t.shells.total);
    sol.mu.resize(d + 1);
    for (std::size_t k = 0; k <= d; ++k) sol.mu[k] = to_double(mu[k]);
    double worst = 0.0;
    for (std::size_t i = 1; i <= d; ++i) {
        double v = 1.0;
        for (std::size_t k = 1; k <= d; ++k) v += mc.d(i, k) * sol.mu[k];
        worst = std::max(worst, std::abs(v));
        sol.active_rows.push_back(i);
    }
    if (worst > 1e-9)
        throw SolverTolerance("uniform step distribution misses zero: " + t.ia.to_string());
    sol.value = 0.0;
    sol.value_exact = Rational(0);
    sol.mu_exact = std::move(mu);
    return sol;
}

/// The binary-Hamming pattern putting all weight on steps d'-1 and d'.
inline MarkovSolution hamming_top_two(std::int64_t d, std::int64_t d_prime) {
    if (d < 2 || d_prime < 1 || 2 * d_prime > d)
        throw OutOfRange("top-two pattern needs 1 <= d' <= d/2");
    IntersectionArray ia;
    for (std::int64_t i = 0; i < d; ++i) ia.b.push_back(d - i);
    for (std::int64_t i = 1; i <= d; ++i) ia.c.push_back(i);
    auto t = spectral_table(ia);
    auto mc = mixing_coefficients(t);

    MarkovSolution sol;
    std::vector<Rational> mu(static_cast<std::size_t>(d) + 1, Rational(0));
    Rational w = Rational(d_prime) / Rational(d + 1);
    mu[static_cast<std::size_t>(d_prime - 1)] = w;
    mu[static_cast<std::size_t>(d_prime)] = Rational(1) - w;
    Rational worst(0);
    for (std::size_t i = 1; i < mu.size(); ++i) {
        Rational v(1);
        for (std::size_t k = 1; k < mu.size(); ++k) v += mc.exact[i][k] * mu[k];
        if (detail::abs_value(v) > worst) worst = detail::abs_value(v);
    }
    auto lp = solve_dtmc(t, static_cast<std::size_t>(d_prime));
    if (!lp.value_exact || *lp.value_exact != worst)
        throw SolverTolerance("top-two pattern misses the optimum");
    sol.value = to_double(worst);
    sol.value_exact = worst;
    for (std::size_t i = 1; i < mu.size(); ++i) {
        Rational v(1);
        for (std::size_t k = 1; k < mu.size(); ++k) v += mc.exact[i][k] * mu[k];
        if (detail::abs_value(v) == worst) sol.active_rows.push_back(i);
    }
    sol.mu.resize(mu.size());
    for (std::size_t k = 0; k < mu.size(); ++k) sol.mu[k] = to_double(mu[k]);
    sol.mu_exact = std::move(mu);
    return sol;
}

/// Transition matrix P[x][y] = mu_{dist(x,y)} / n_{dist(x,y)} on an explicit graph.
inline Matrix dtmc_transition_matrix(const DistanceData& dist, const std::vector<double>& mu,
                                     const std::vector<std::int64_t>& shells) {
    if (mu.size() != shells.size()) throw DimensionMismatch("mu vs shell count");
    std::vector<double> f(mu.size());
    for (std::size_t m = 0; m < mu.size(); ++m) f[m] = mu[m] / static_cast<double>(shells[m]);
    return assemble_m(dist, f);
}

/// Generator with off-diagonal rates rho_m / n_m and exit rate 1.
inline Matrix ctmc_generator(const DistanceData& dist, const std::vector<double>& rho,
                             const std::vector<std::int64_t>& shells) {
    if (rho.size() != shells.size()) throw DimensionMismatch("rho vs shell count");
    std::vector<double> f(rho.size());
    double total = 0.0;
    for (std::size_t m = 1; m < rho.size(); ++m) {
        f[m] = rho[m] / static_cast<double>(shells[m]);
        total += rho[m];
    }
    f[0] = -total;
    return assemble_m(dist, f);
}

} // namespace gdspec
