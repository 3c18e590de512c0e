#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "gdspec/errors.hpp"
#include "gdspec/linalg.hpp"
#include "gdspec/polynomial.hpp"
#include "gdspec/random.hpp"
#include "gdspec/spectral.hpp"

namespace gdspec {

inline constexpr double kSemidefiniteTol = 1e-10;

inline void check_competition_domain(const std::vector<double>& f) {
    if (f.empty() || f[0] != 1.0)
        throw DomainViolation("competition vector must start at 1");
    for (std::size_t m = 0; m + 1 < f.size(); ++m)
        if (f[m + 1] > f[m]) throw DomainViolation("competition vector must be nonincreasing");
    if (f.back() < 0.0) throw DomainViolation("competition vector must stay nonnegative");
}

inline std::vector<double> random_competition_vector(Rng& rng, std::size_t d) {
    std::vector<double> f(d + 1, 1.0);
    for (std::size_t m = 1; m <= d; ++m) f[m] = rng.next_unit();
    std::sort(f.begin() + 1, f.end(), std::greater<double>());
    return f;
}

/// Entry (i, d') is the eigenvalue of M(f) at the step-function corner
/// f = 1(k <= d'), i.e. the cumulative row sums of the coefficient table.
inline Matrix corner_eigenvalues(const SpectralTable& t) {
    const std::size_t d = t.diameter();
    Matrix out(d + 1, d + 1);
    for (std::size_t i = 0; i <= d; ++i) {
        double acc = 0.0;
        for (std::size_t m = 0; m <= d; ++m) {
            acc += t.coeff(i, m);
            out(i, m) = acc;
        }
    }
    return out;
}

struct CornerReport {
    bool nonneg = true;
    bool strict_interior = true;
    std::optional<std::pair<std::size_t, std::size_t>> witness_corner; // (i, d')
    Matrix corners;
};

inline CornerReport pd_over_competition_domain(const SpectralTable& t) {
    CornerReport rep;
    rep.corners = corner_eigenvalues(t);
    double lo = std::numeric_limits<double>::infinity();
    const std::size_t d = t.diameter();
    for (std::size_t i = 0; i <= d; ++i)
        for (std::size_t dp = 0; dp <= d; ++dp) {
            double v = rep.corners(i, dp);
            if (v < -kSemidefiniteTol && !rep.witness_corner) rep.witness_corner = {{i, dp}};
            lo = std::min(lo, v);
        }
    rep.nonneg = lo >= -kSemidefiniteTol;
    rep.strict_interior = lo > kSemidefiniteTol;
    return rep;
}

struct UniformPdReport {
    bool uniform = true;
    std::optional<double> z_star;
    std::optional<std::size_t> witness_index;
};

namespace detail {

/// Smallest z in [0,1] where the polynomial first dips below -tol, located by
/// a 2^-10 grid scan and refined by bisection to 1e-12. Nothing reported when
/// the polynomial stays above -tol on the whole grid.
inline std::optional<double> first_negative_crossing(const DoublePoly& p, double tol) {
    constexpr int kSteps = 1024;
    double prev_z = 0.0;
    if (p.eval(0.0) < -tol) return 0.0;
    for (int j = 1; j <= kSteps; ++j) {
        double z = static_cast<double>(j) / kSteps;
        if (p.eval(z) < -tol) {
            double a = prev_z, b = z;
            if (p.eval(a) < 0.0) return a;
            while (b - a > 1e-12) {
                double mid = 0.5 * (a + b);
                (p.eval(mid) >= 0.0 ? a : b) = mid;
            }
            return b;
        }
        prev_z = z;
    }
    return std::nullopt;
}

} // namespace detail

inline UniformPdReport uniform_pd(const SpectralPolynomialSet& set) {
    UniformPdReport rep;
    for (std::size_t i = 0; i < set.entries.size(); ++i) {
        auto z = detail::first_negative_crossing(set.entries[i].poly, kSemidefiniteTol);
        if (z && (!rep.z_star || *z < *rep.z_star)) {
            rep.z_star = *z;
            rep.witness_index = i;
        }
    }
    rep.uniform = !rep.z_star.has_value();
    return rep;
}

struct MinBoundReport {
    double r = 0.0;
    double min_lambda = 0.0;
    double bound = 0.0;
    bool holds = false;
};

inline MinBoundReport min_eigen_bound(const SpectralTable& t, const std::vector<double>& f) {
    check_competition_domain(f);
    auto lam = eigenvalue_for_f(t, f);
    MinBoundReport rep;
    for (std::size_t m = 0; m < f.size(); ++m)
        rep.r += f[m] * static_cast<double>(t.shells.n[m]);
    rep.min_lambda = *std::min_element(lam.begin(), lam.end());
    rep.bound = 2.0 - rep.r;
    rep.holds = rep.min_lambda >= rep.bound - 1e-9;
    return rep;
}

struct PositivityReport {
    bool pd_over_domain = false;
    bool strict_interior = false;
    Matrix corner_values;
    bool uniform = false;
    std::optional<double> z_star;
    bool min_bound_ok = false;
    // rows whose corner values dip negative; a rough instability surrogate
    int negative_corner_rows = 0;
};

inline PositivityReport positivity_report(const SpectralTable& t, const SpectralPolynomialSet& phis,
                                          std::uint64_t seed = 1, int samples = 200) {
    PositivityReport rep;
    auto corner = pd_over_competition_domain(t);
    rep.pd_over_domain = corner.nonneg;
    rep.strict_interior = corner.strict_interior;
    rep.corner_values = corner.corners;
    auto uni = uniform_pd(phis);
    rep.uniform = uni.uniform;
    rep.z_star = uni.z_star;

    const std::size_t d = t.diameter();
    for (std::size_t i = 0; i <= d; ++i) {
        for (std::size_t dp = 0; dp <= d; ++dp) {
            if (rep.corner_values(i, dp) < -kSemidefiniteTol) {
                ++rep.negative_corner_rows;
                break;
            }
        }
    }

    Rng rng(seed);
    rep.min_bound_ok = true;
    for (int s = 0; s < samples; ++s) {
        auto f = random_competition_vector(rng, d);
        if (!min_eigen_bound(t, f).holds) {
            rep.min_bound_ok = false;
            break;
        }
    }
    return rep;
}

} // namespace gdspec
