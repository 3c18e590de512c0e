#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "gdspec/errors.hpp"
#include "gdspec/graph.hpp"
#include "gdspec/jacobi.hpp"
#include "gdspec/linalg.hpp"
#include "gdspec/positivity.hpp"
#include "gdspec/spectral.hpp"

namespace gdspec {

struct GlvcSystem {
    Matrix c;
    std::optional<Matrix> d;
    std::vector<double> r;
    std::vector<double> x_star;
};

/// Without mutation r is chosen so x_star is a fixed point of
/// x_i' = x_i (r_i - (Cx)_i). With mutation the dynamics are
/// x_i' = r_i (Dx)_i - x_i (Cx)_i and the fixed point is pinned at 1.
inline GlvcSystem build_system(const DistanceData& dist, const std::vector<double>& f,
                               const std::optional<std::vector<double>>& g_mut = std::nullopt,
                               std::vector<double> x_star = {}) {
    check_competition_domain(f);
    GlvcSystem sys;
    sys.c = assemble_m(dist, f);
    if (x_star.empty()) x_star.assign(dist.n, 1.0);
    if (x_star.size() != dist.n) throw DimensionMismatch("fixed point length");
    for (double v : x_star)
        if (v <= 0.0) throw DomainViolation("fixed point must sit in the positive octant");

    if (g_mut) {
        for (double v : *g_mut)
            if (v < 0.0) throw DomainViolation("mutation kernel must be nonnegative");
        for (double v : x_star)
            if (v != 1.0) throw DomainViolation("mutation model pins the fixed point at 1");
        Matrix d = assemble_m(dist, *g_mut);
        for (std::size_t i = 0; i < d.rows; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < d.cols; ++j) s += d(i, j);
            if (std::abs(s - 1.0) > 1e-12)
                throw RowSumViolation("mutation matrix row sum is " + std::to_string(s));
        }
        sys.d = std::move(d);
        sys.r = sys.c * std::vector<double>(dist.n, 1.0);
    } else {
        sys.r = sys.c * x_star;
    }
    sys.x_star = std::move(x_star);
    return sys;
}

inline std::vector<double> glvc_rhs(const GlvcSystem& sys, const std::vector<double>& x) {
    std::vector<double> cx = sys.c * x;
    std::vector<double> out(x.size());
    if (sys.d) {
        std::vector<double> dx = *sys.d * x;
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = sys.r[i] * dx[i] - x[i] * cx[i];
    } else {
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * (sys.r[i] - cx[i]);
    }
    return out;
}

inline Matrix jacobian(const GlvcSystem& sys) {
    const std::size_t n = sys.x_star.size();
    Matrix j(n, n);
    if (sys.d) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                j(i, k) = sys.r[i] * ((*sys.d)(i, k) - (i == k ? 1.0 : 0.0)) - sys.c(i, k);
            }
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) j(i, k) = -sys.x_star[i] * sys.c(i, k);
    }
    return j;
}

/// Spectrum of the fixed-point Jacobian. -diag(x*)C is diagonally similar to
/// the symmetric -sqrt(x*) C sqrt(x*), so a symmetric solver covers both
/// model variants.
inline std::vector<double> jacobian_spectrum(const GlvcSystem& sys) {
    const std::size_t n = sys.x_star.size();
    Matrix s(n, n);
    if (sys.d) {
        s = jacobian(sys);
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                s(i, k) = -std::sqrt(sys.x_star[i] * sys.x_star[k]) * sys.c(i, k);
    }
    return dense_sym_eigen(s, false).values;
}

struct StabilityVerdict {
    double jacobian_eigen_max = 0.0;
    bool stable = false;
    std::optional<double> matrix_route_eigen_max;
};

/// Eigenvalues of the Jacobian through the coefficient table: -lambda_i(f)
/// without mutation, r lambda_i(g) - lambda_i(f) - r with it.
inline std::vector<double> jacobian_spectrum_for_f(const SpectralTable& t,
                                                   const std::vector<double>& f,
                                                   const std::optional<std::vector<double>>& g) {
    const std::size_t d = t.diameter();
    double r = 0.0;
    for (std::size_t m = 0; m <= d; ++m) r += f[m] * static_cast<double>(t.shells.n[m]);
    auto lf = eigenvalue_for_f(t, f);
    std::vector<double> out(d + 1);
    if (g) {
        auto lg = eigenvalue_for_f(t, *g);
        for (std::size_t i = 0; i <= d; ++i) out[i] = r * lg[i] - lf[i] - r;
    } else {
        for (std::size_t i = 0; i <= d; ++i) out[i] = -lf[i];
    }
    return out;
}

inline StabilityVerdict stability_verdict(const GlvcSystem& sys, const SpectralTable* table = nullptr,
                                          const std::vector<double>* f = nullptr,
                                          const std::vector<double>* g = nullptr) {
    StabilityVerdict v;
    auto spec = jacobian_spectrum(sys);
    v.jacobian_eigen_max = *std::max_element(spec.begin(), spec.end());
    v.stable = v.jacobian_eigen_max < 0.0;
    if (table && f) {
        std::optional<std::vector<double>> gm;
        if (g) gm = *g;
        auto route = jacobian_spectrum_for_f(*table, *f, gm);
        v.matrix_route_eigen_max = *std::max_element(route.begin(), route.end());
        if (std::abs(*v.matrix_route_eigen_max - v.jacobian_eigen_max) > 1e-7)
            throw SolverTolerance("jacobian eigenvalue routes disagree");
    }
    return v;
}

struct Trajectory {
    std::vector<double> t;
    std::vector<std::vector<double>> x;
};

inline Trajectory integrate(const GlvcSystem& sys, std::vector<double> x0, double t_end,
                            double dt) {
    if (dt <= 0.0 || t_end < 0.0) throw OutOfRange("need dt > 0 and t_end >= 0");
    if (x0.size() != sys.x_star.size()) throw DimensionMismatch("state length");
    for (double v : x0)
        if (v <= 0.0) throw DomainViolation("start must sit in the positive octant");

    Trajectory traj;
    traj.t.push_back(0.0);
    traj.x.push_back(x0);
    double time = 0.0;
    std::vector<double> k1, k2, k3, k4, tmp(x0.size());
    while (time < t_end - 1e-15) {
        double h = std::min(dt, t_end - time);
        k1 = glvc_rhs(sys, x0);
        for (std::size_t i = 0; i < x0.size(); ++i) tmp[i] = x0[i] + 0.5 * h * k1[i];
        k2 = glvc_rhs(sys, tmp);
        for (std::size_t i = 0; i < x0.size(); ++i) tmp[i] = x0[i] + 0.5 * h * k2[i];
        k3 = glvc_rhs(sys, tmp);
        for (std::size_t i = 0; i < x0.size(); ++i) tmp[i] = x0[i] + h * k3[i];
        k4 = glvc_rhs(sys, tmp);

        double min_x = *std::min_element(x0.begin(), x0.end());
        double max_step = 0.0;
        for (std::size_t i = 0; i < x0.size(); ++i) {
            double step = h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            tmp[i] = x0[i] + step;
            max_step = std::max(max_step, std::abs(step));
        }
        if (max_step > 0.1 * min_x)
            throw OutOfRange("time step too coarse for this trajectory");
        for (std::size_t i = 0; i < x0.size(); ++i) {
            if (tmp[i] > 1e12 || tmp[i] < -1e-12)
                throw BlowUp("trajectory left the admissible region");
            x0[i] = std::max(tmp[i], 0.0);
        }
        time += h;
        traj.t.push_back(time);
        traj.x.push_back(x0);
    }
    return traj;
}

inline std::vector<double> point_mutation_kernel(std::size_t d, double mu) {
    std::vector<double> g(d + 1);
    for (std::size_t k = 0; k <= d; ++k)
        g[k] = std::pow(mu, static_cast<double>(k)) * std::pow(1.0 - mu, static_cast<double>(d - k));
    return g;
}

struct MutationSearchReport {
    double mu_star = 0.0;
    bool already_stable = false;
    bool stable_at_half = false;
    double max_eigen_at_mu_star = 0.0;
};

/// Sweep the point-mutation strength and locate where the largest
/// nonprincipal Jacobian eigenvalue of r(D-I)-C changes sign.
inline MutationSearchReport stabilizing_mutation(const SpectralTable& t,
                                                 const std::vector<double>& f) {
    check_competition_domain(f);
    const std::size_t d = t.diameter();

    auto max_eigen = [&](double mu) {
        auto g = point_mutation_kernel(d, mu);
        double s = 0.0;
        for (std::size_t m = 0; m <= d; ++m) s += g[m] * static_cast<double>(t.shells.n[m]);
        for (double& v : g) v /= s;
        auto vals = jacobian_spectrum_for_f(t, f, g);
        return *std::max_element(vals.begin() + 1, vals.end());
    };

    MutationSearchReport rep;
    rep.stable_at_half = max_eigen(0.5) < 0.0;
    if (max_eigen(0.0) < 0.0) {
        rep.already_stable = true;
        rep.max_eigen_at_mu_star = max_eigen(0.0);
        return rep;
    }
    constexpr int kGrid = 40;
    double lo = 0.0, hi = 0.5;
    for (int j = 1; j <= kGrid; ++j) {
        double mu = 0.5 * j / kGrid;
        if (max_eigen(mu) < 0.0) {
            hi = mu;
            lo = 0.5 * (j - 1) / kGrid;
            break;
        }
        if (j == kGrid) throw NoConvergence("no stabilizing mutation found on [0, 1/2]");
    }
    while (hi - lo > 1e-6) {
        double mid = 0.5 * (lo + hi);
        (max_eigen(mid) < 0.0 ? hi : lo) = mid;
    }
    rep.mu_star = hi;
    rep.max_eigen_at_mu_star = max_eigen(hi);
    return rep;
}

} // namespace gdspec
