#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "gdspec/errors.hpp"
#include "gdspec/intersection_array.hpp"
#include "gdspec/linalg.hpp"
#include "gdspec/polynomial.hpp"
#include "gdspec/rational.hpp"
#include "gdspec/tridiagonal.hpp"

namespace gdspec {

/// The orthogonal polynomials p_m attached to an intersection array,
/// kept in exact rationals, together with their partial sums q_m.
struct PolynomialFamily {
    std::vector<RationalPoly> p;
    std::vector<RationalPoly> q;
};

inline PolynomialFamily p_polynomials(const IntersectionArray& ia) {
    validate(ia);
    const std::size_t d = ia.diameter();
    PolynomialFamily fam;
    fam.p.resize(d + 1);
    fam.p[0] = RationalPoly::constant(Rational(1));
    if (d >= 1) fam.p[1] = RationalPoly::z();
    for (std::size_t m = 1; m < d; ++m) {
        // z p_m = c_{m+1} p_{m+1} + a_m p_m + b_{m-1} p_{m-1}
        RationalPoly zp = RationalPoly::z() * fam.p[m];
        RationalPoly rhs = zp - fam.p[m] * Rational(ia.a_at(m)) - fam.p[m - 1] * Rational(ia.b_at(m - 1));
        fam.p[m + 1] = rhs * (Rational(1) / Rational(ia.c_at(m + 1)));
    }
    fam.q.resize(d + 1);
    RationalPoly acc;
    for (std::size_t m = 0; m <= d; ++m) {
        acc += fam.p[m];
        fam.q[m] = acc;
    }
    return fam;
}

inline Matrix build_q_matrix(const IntersectionArray& ia) {
    validate(ia);
    const std::size_t d = ia.diameter();
    Matrix q(d + 1, d + 1);
    for (std::size_t i = 0; i <= d; ++i) {
        q(i, i) = static_cast<double>(ia.a_at(i));
        if (i < d) q(i, i + 1) = static_cast<double>(ia.b_at(i));
        if (i > 0) q(i, i - 1) = static_cast<double>(ia.c_at(i));
    }
    return q;
}

namespace detail {

/// q_d evaluation scale for the residual test, Σ|coef_m| max(1,|x|)^m.
inline double eval_scale(const DoublePoly& poly, double x) {
    double scale = 0.0, pw = 1.0;
    const double ax = std::max(1.0, std::abs(x));
    for (double c : poly.c) {
        scale += std::abs(c) * pw;
        pw *= ax;
    }
    return std::max(scale, 1.0);
}

inline std::vector<double> eigenvalues_impl(const IntersectionArray& ia,
                                            const PolynomialFamily& fam) {
    const std::size_t d = ia.diameter();
    std::vector<double> diag(d + 1), off(d);
    for (std::size_t i = 0; i <= d; ++i) diag[i] = static_cast<double>(ia.a_at(i));
    for (std::size_t i = 0; i < d; ++i)
        off[i] = std::sqrt(static_cast<double>(ia.b_at(i)) * static_cast<double>(ia.c_at(i + 1)));
    std::vector<double> ev = tridiagonal_eigenvalues(diag, off);

    double scale = 1.0;
    for (double x : ev) scale = std::max(scale, std::abs(x));
    for (std::size_t i = 0; i + 1 < ev.size(); ++i)
        if (std::abs(ev[i] - ev[i + 1]) <= 1e-8 * scale)
            throw DegenerateSpectrum("eigenvalues not distinct: " + ia.to_string());

    ev[0] = static_cast<double>(ia.valency());
    const RationalPoly& qd = fam.q[d];
    const DoublePoly qd_dbl = to_double_poly(qd);
    for (std::size_t i = 1; i <= d; ++i) {
        if (auto z = nearby_integer(ev[i], 1e-6 * std::max(1.0, std::abs(ev[i])))) {
            if (qd.eval(Rational(*z)) == 0) ev[i] = static_cast<double>(*z);
        }
        double resid = std::abs(qd_dbl.eval(ev[i]));
        if (resid > 1e-9 * eval_scale(qd_dbl, ev[i]))
            throw DegenerateSpectrum("eigenvalue residual too large: " + ia.to_string());
    }
    return ev;
}

} // namespace detail

inline std::vector<double> eigenvalues(const IntersectionArray& ia) {
    auto fam = p_polynomials(ia);
    return detail::eigenvalues_impl(ia, fam);
}

/// Eigensolve a quotient matrix produced by build_q_matrix. The integer
/// b/c entries are recovered from the off-diagonals.
inline std::vector<double> eigenvalues(const Matrix& q) {
    if (q.rows != q.cols || q.rows < 2) throw DimensionMismatch("bad quotient matrix");
    IntersectionArray ia;
    for (std::size_t i = 0; i + 1 < q.rows; ++i) {
        ia.b.push_back(std::llround(q(i, i + 1)));
        ia.c.push_back(std::llround(q(i + 1, i)));
    }
    return eigenvalues(ia);
}

struct SpectralTable {
    IntersectionArray ia;
    ShellSizes shells;
    std::vector<double> lambdas; // descending, lambdas[0] = k
    std::vector<std::optional<BigInt>> lambda_int;
    std::vector<std::int64_t> mults;
    Matrix coeff; // coeff(i,m) = p_m(lambda_i)
    std::vector<std::vector<Rational>> coeff_exact; // row empty unless lambda integral
    bool all_integral = false;

    std::size_t diameter() const { return lambdas.empty() ? 0 : lambdas.size() - 1; }
};

inline SpectralTable spectral_table(const IntersectionArray& ia) {
    auto fam = p_polynomials(ia);
    SpectralTable t;
    t.ia = ia;
    t.shells = shell_sizes(ia);
    t.lambdas = detail::eigenvalues_impl(ia, fam);
    const std::size_t d = ia.diameter();
    const auto n = static_cast<double>(t.shells.total);

    t.lambda_int.resize(d + 1);
    t.coeff = Matrix(d + 1, d + 1);
    t.coeff_exact.resize(d + 1);
    std::vector<DoublePoly> p_dbl(d + 1);
    for (std::size_t m = 0; m <= d; ++m) p_dbl[m] = to_double_poly(fam.p[m]);

    for (std::size_t i = 0; i <= d; ++i) {
        std::optional<BigInt> li;
        if (i == 0) {
            li = BigInt(ia.valency());
        } else if (auto z = nearby_integer(t.lambdas[i], 1e-9 * std::max(1.0, std::abs(t.lambdas[i])))) {
            if (fam.q[d].eval(Rational(*z)) == 0) li = BigInt(*z);
        }
        t.lambda_int[i] = li;
        if (li) {
            Rational lam(*li);
            std::vector<Rational> row(d + 1);
            for (std::size_t m = 0; m <= d; ++m) {
                row[m] = fam.p[m].eval(lam);
                t.coeff(i, m) = to_double(row[m]);
            }
            t.coeff_exact[i] = std::move(row);
        } else {
            for (std::size_t m = 0; m <= d; ++m) t.coeff(i, m) = p_dbl[m].eval(t.lambdas[i]);
        }
    }
    t.all_integral = true;
    for (const auto& li : t.lambda_int)
        if (!li) t.all_integral = false;

    t.mults.resize(d + 1);
    std::int64_t mult_sum = 0;
    for (std::size_t i = 0; i <= d; ++i) {
        if (!t.coeff_exact[i].empty()) {
            Rational denom = 0;
            for (std::size_t m = 0; m <= d; ++m)
                denom += t.coeff_exact[i][m] * t.coeff_exact[i][m] / Rational(t.shells.n[m]);
            Rational mult = Rational(t.shells.total) / denom;
            if (!is_integer(mult)) throw MultiplicityNotIntegral(ia.to_string());
            t.mults[i] = static_cast<std::int64_t>(BigInt(numerator(mult)));
        } else {
            double denom = 0.0;
            for (std::size_t m = 0; m <= d; ++m)
                denom += t.coeff(i, m) * t.coeff(i, m) / static_cast<double>(t.shells.n[m]);
            double mult = n / denom;
            double rounded = std::round(mult);
            if (std::abs(mult - rounded) > 1e-6 || rounded < 1.0)
                throw MultiplicityNotIntegral(ia.to_string());
            t.mults[i] = static_cast<std::int64_t>(rounded);
        }
        mult_sum += t.mults[i];
    }
    if (mult_sum != t.shells.total) throw MultiplicityNotIntegral(ia.to_string());
    return t;
}

inline std::vector<double> eigenvalue_for_f(const SpectralTable& t, const std::vector<double>& f) {
    const std::size_t d = t.diameter();
    if (f.size() != d + 1) throw DimensionMismatch("f must have d+1 entries");
    std::vector<double> out(d + 1, 0.0);
    for (std::size_t i = 0; i <= d; ++i)
        for (std::size_t m = 0; m <= d; ++m) out[i] += f[m] * t.coeff(i, m);
    return out;
}

struct PhiEntry {
    DoublePoly poly;
    std::int64_t mult = 0;
    std::optional<RationalPoly> exact;
};

struct SpectralPolynomialSet {
    std::vector<PhiEntry> entries;

    std::int64_t total_mult() const {
        std::int64_t s = 0;
        for (const auto& e : entries) s += e.mult;
        return s;
    }
    std::size_t max_len() const {
        std::size_t m = 0;
        for (const auto& e : entries) m = std::max(m, e.poly.c.size());
        return m;
    }
};

/// phi_i coefficients are row i of the table; for i >= 1 the factored form
/// (1-z) sum q_m(lambda_i) z^m must reproduce the same coefficients.
inline SpectralPolynomialSet spectral_polynomials(const SpectralTable& t) {
    auto fam = p_polynomials(t.ia);
    const std::size_t d = t.diameter();
    SpectralPolynomialSet set;
    set.entries.resize(d + 1);
    for (std::size_t i = 0; i <= d; ++i) {
        PhiEntry& e = set.entries[i];
        e.mult = t.mults[i];
        e.poly.c.assign(d + 1, 0.0);
        for (std::size_t m = 0; m <= d; ++m) e.poly.c[m] = t.coeff(i, m);
        if (!t.coeff_exact[i].empty()) {
            RationalPoly ep;
            ep.c = t.coeff_exact[i];
            e.exact = std::move(ep);
        }
        if (i == 0) continue;

        if (e.exact) {
            RationalPoly factored;
            factored.c.assign(d + 1, Rational(0));
            Rational lam(*t.lambda_int[i]);
            for (std::size_t m = 0; m < d; ++m) {
                Rational qm = fam.q[m].eval(lam);
                factored.c[m] += qm;
                factored.c[m + 1] -= qm;
            }
            for (std::size_t m = 0; m <= d; ++m)
                if (factored.c[m] != e.exact->c[m])
                    throw FactorizationResidual(t.ia.to_string());
        } else {
            std::vector<double> factored(d + 1, 0.0);
            double scale = 1.0;
            for (std::size_t m = 0; m <= d; ++m) scale = std::max(scale, std::abs(e.poly.c[m]));
            for (std::size_t m = 0; m < d; ++m) {
                double qm = to_double_poly(fam.q[m]).eval(t.lambdas[i]);
                factored[m] += qm;
                factored[m + 1] -= qm;
            }
            for (std::size_t m = 0; m <= d; ++m)
                if (std::abs(factored[m] - e.poly.c[m]) > 1e-9 * scale)
                    throw FactorizationResidual(t.ia.to_string());
        }
    }
    return set;
}

struct WeightedEigenvalue {
    double value = 0.0;
    std::int64_t mult = 0;
};

/// Treat each polynomial's coefficients as the linear weights on f. Works
/// for product sets too, where entries are longer than any single table row.
inline std::vector<WeightedEigenvalue> eigenvalues_for_f(const SpectralPolynomialSet& s,
                                                         const std::vector<double>& f) {
    std::vector<WeightedEigenvalue> out;
    out.reserve(s.entries.size());
    for (const auto& e : s.entries) {
        if (f.size() < e.poly.c.size())
            throw DimensionMismatch("f shorter than polynomial coefficients");
        double v = 0.0;
        for (std::size_t m = 0; m < e.poly.c.size(); ++m) v += f[m] * e.poly.c[m];
        out.push_back({v, e.mult});
    }
    return out;
}

} // namespace gdspec
