#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "gdspec/errors.hpp"
#include "gdspec/graph.hpp"
#include "gdspec/linalg.hpp"
#include "gdspec/polynomial.hpp"
#include "gdspec/spectral.hpp"

namespace gdspec {

namespace detail {

inline bool phi_entries_equal(const PhiEntry& a, const PhiEntry& b) {
    if (a.exact && b.exact) {
        std::size_t n = std::max(a.exact->c.size(), b.exact->c.size());
        for (std::size_t k = 0; k < n; ++k)
            if (a.exact->coeff(k) != b.exact->coeff(k)) return false;
        return true;
    }
    return max_coeff_diff(a.poly, b.poly) <= 1e-10;
}

} // namespace detail

/// Pairwise polynomial products with multiplied multiplicities; equal
/// polynomials merge (exactly when both sides carry rational coefficients,
/// coefficientwise at 1e-10 otherwise).
inline SpectralPolynomialSet tensor_phi(const SpectralPolynomialSet& a,
                                        const SpectralPolynomialSet& b) {
    SpectralPolynomialSet out;
    for (const auto& ea : a.entries) {
        for (const auto& eb : b.entries) {
            PhiEntry prod;
            prod.mult = ea.mult * eb.mult;
            if (ea.exact && eb.exact) {
                prod.exact = *ea.exact * *eb.exact;
                prod.poly = to_double_poly(*prod.exact);
            } else {
                prod.poly = ea.poly * eb.poly;
            }
            bool merged = false;
            for (auto& e : out.entries) {
                if (detail::phi_entries_equal(e, prod)) {
                    e.mult += prod.mult;
                    if (!(e.exact && prod.exact)) e.exact.reset();
                    merged = true;
                    break;
                }
            }
            if (!merged) out.entries.push_back(std::move(prod));
        }
    }
    return out;
}

struct ProductSpectrum {
    std::vector<SpectralPolynomialSet> factors;
    SpectralPolynomialSet combined;
    std::int64_t candidate_count = 0; // prod (d_i + 1) before merging
    std::int64_t distinct_count = 0;
};

inline ProductSpectrum product_spectrum(std::vector<SpectralPolynomialSet> factors) {
    if (factors.empty()) throw DimensionMismatch("product needs at least one factor");
    ProductSpectrum ps;
    ps.combined = factors[0];
    ps.candidate_count = static_cast<std::int64_t>(factors[0].entries.size());
    for (std::size_t i = 1; i < factors.size(); ++i) {
        ps.combined = tensor_phi(ps.combined, factors[i]);
        ps.candidate_count *= static_cast<std::int64_t>(factors[i].entries.size());
    }
    ps.distinct_count = static_cast<std::int64_t>(ps.combined.entries.size());
    ps.factors = std::move(factors);
    return ps;
}

/// A function on the product expressed as sum_q g^(q)_k h^(q)_l; usable as a
/// single f on G square H only when that sum depends on k+l alone.
struct SumDecomposition {
    std::vector<std::pair<std::vector<double>, std::vector<double>>> terms;
};

inline std::vector<double> combined_values(const SumDecomposition& dec) {
    if (dec.terms.empty()) throw DimensionMismatch("empty decomposition");
    const std::size_t ng = dec.terms[0].first.size();
    const std::size_t nh = dec.terms[0].second.size();
    if (ng == 0 || nh == 0) throw DimensionMismatch("empty decomposition vectors");
    for (const auto& t : dec.terms)
        if (t.first.size() != ng || t.second.size() != nh)
            throw DimensionMismatch("decomposition terms differ in length");
    std::vector<double> f(ng + nh - 1, 0.0);
    std::vector<bool> seen(f.size(), false);
    for (std::size_t k = 0; k < ng; ++k) {
        for (std::size_t l = 0; l < nh; ++l) {
            double v = 0.0;
            for (const auto& t : dec.terms) v += t.first[k] * t.second[l];
            if (!seen[k + l]) {
                f[k + l] = v;
                seen[k + l] = true;
            } else if (std::abs(f[k + l] - v) > 1e-12) {
                throw NotSumDecomposable("sum varies across splits of k+l");
            }
        }
    }
    return f;
}

/// M(f; G square H) assembled as sum_q M(g;G) kron M(h;H). Vertex order
/// matches cartesian_product (first-factor-major).
inline Matrix tensor_m(const SumDecomposition& dec, const DistanceData& dg,
                       const DistanceData& dh) {
    combined_values(dec);
    Matrix acc(dg.n * dh.n, dg.n * dh.n);
    for (const auto& t : dec.terms)
        acc = acc + kronecker(assemble_m(dg, t.first), assemble_m(dh, t.second));
    return acc;
}

inline SumDecomposition adjacency_decomposition(std::size_t dg, std::size_t dh) {
    if (dg < 1 || dh < 1) throw OutOfRange("factors need diameter >= 1");
    std::vector<double> g0(dg + 1, 0.0), g1(dg + 1, 0.0);
    std::vector<double> h0(dh + 1, 0.0), h1(dh + 1, 0.0);
    g0[0] = 1.0;
    g1[1] = 1.0;
    h0[0] = 1.0;
    h1[1] = 1.0;
    return {{{g1, h0}, {g0, h1}}};
}

inline SumDecomposition classical_distance_decomposition(std::size_t dg, std::size_t dh) {
    std::vector<double> gd(dg + 1), hd(dh + 1);
    for (std::size_t k = 0; k <= dg; ++k) gd[k] = static_cast<double>(k);
    for (std::size_t l = 0; l <= dh; ++l) hd[l] = static_cast<double>(l);
    std::vector<double> ones_g(dg + 1, 1.0), ones_h(dh + 1, 1.0);
    return {{{gd, ones_h}, {ones_g, hd}}};
}

} // namespace gdspec
