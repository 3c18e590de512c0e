#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdspec/errors.hpp"
#include "gdspec/graph.hpp"
#include "gdspec/intersection_array.hpp"
#include "gdspec/polynomial.hpp"
#include "gdspec/rational.hpp"
#include "gdspec/spectral.hpp"

namespace gdspec {

enum class Family { Complete, Cycle, Hamming, Johnson, StronglyRegular, Taylor, Crown, NamedCubic };

enum class CubicName { K4, K33, Cube, Petersen, Heawood, Pappus, Desargues, Dodecahedral };

struct FamilySpec {
    Family family = Family::Complete;
    std::vector<std::int64_t> params;
    CubicName cubic = CubicName::K4;

    std::string to_string() const;
};

namespace detail {

inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline const char* cubic_label(CubicName c) {
    switch (c) {
        case CubicName::K4: return "k4";
        case CubicName::K33: return "k33";
        case CubicName::Cube: return "cube";
        case CubicName::Petersen: return "petersen";
        case CubicName::Heawood: return "heawood";
        case CubicName::Pappus: return "pappus";
        case CubicName::Desargues: return "desargues";
        case CubicName::Dodecahedral: return "dodecahedral";
    }
    return "?";
}

} // namespace detail

inline std::string FamilySpec::to_string() const {
    std::string head;
    switch (family) {
        case Family::Complete: head = "complete"; break;
        case Family::Cycle: head = "cycle"; break;
        case Family::Hamming: head = "hamming"; break;
        case Family::Johnson: head = "johnson"; break;
        case Family::StronglyRegular: head = "srg"; break;
        case Family::Taylor: head = "taylor"; break;
        case Family::Crown: head = "crown"; break;
        case Family::NamedCubic: return std::string("cubic:") + detail::cubic_label(cubic);
    }
    head += ":";
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) head += ",";
        head += std::to_string(params[i]);
    }
    return head;
}

/// Specs look like "hamming:8,2", "srg:10,3,0,1", "cubic:heawood".
inline FamilySpec parse_family_spec(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw ParseError("family spec needs name:params, got " + s);
    std::string name = s.substr(0, colon);
    std::string rest = s.substr(colon + 1);
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

    FamilySpec spec;
    if (name == "cubic") {
        spec.family = Family::NamedCubic;
        std::string g = rest;
        std::transform(g.begin(), g.end(), g.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (g == "k4") spec.cubic = CubicName::K4;
        else if (g == "k33" || g == "k3,3" || g == "utility") spec.cubic = CubicName::K33;
        else if (g == "cube") spec.cubic = CubicName::Cube;
        else if (g == "petersen") spec.cubic = CubicName::Petersen;
        else if (g == "heawood") spec.cubic = CubicName::Heawood;
        else if (g == "pappus") spec.cubic = CubicName::Pappus;
        else if (g == "desargues") spec.cubic = CubicName::Desargues;
        else if (g == "dodecahedral" || g == "dodecahedron") spec.cubic = CubicName::Dodecahedral;
        else if (g == "coxeter" || g == "foster" || g == "biggs-smith" || g == "tutte-coxeter" ||
                 g == "tutte-12-cage")
            throw UnsupportedFamily("cubic graph not covered: " + g);
        else
            throw ParseError("unknown cubic graph: " + g);
        return spec;
    }

    if (name == "complete") spec.family = Family::Complete;
    else if (name == "cycle") spec.family = Family::Cycle;
    else if (name == "hamming") spec.family = Family::Hamming;
    else if (name == "johnson") spec.family = Family::Johnson;
    else if (name == "srg") spec.family = Family::StronglyRegular;
    else if (name == "taylor") spec.family = Family::Taylor;
    else if (name == "crown") spec.family = Family::Crown;
    else throw ParseError("unknown family: " + name);

    std::size_t pos = 0;
    while (pos <= rest.size()) {
        auto comma = rest.find(',', pos);
        std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (tok.empty()) throw ParseError("empty parameter in spec " + s);
        try {
            std::size_t used = 0;
            spec.params.push_back(std::stoll(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ParseError("bad integer '" + tok + "' in spec " + s);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }

    static const std::size_t arity[] = {1, 1, 2, 2, 4, 2, 1};
    std::size_t want = arity[static_cast<std::size_t>(spec.family)];
    if (spec.params.size() != want)
        throw ParseError("family " + name + " needs " + std::to_string(want) + " parameters");
    return spec;
}

namespace detail {
inline IntersectionArray cubic_array(CubicName c) {
    switch (c) {
        case CubicName::K4: return {{3}, {1}};
        case CubicName::K33: return {{3, 2}, {1, 3}};
        case CubicName::Cube: return {{3, 2, 1}, {1, 2, 3}};
        case CubicName::Petersen: return {{3, 2}, {1, 1}};
        case CubicName::Heawood: return {{3, 2, 2}, {1, 1, 3}};
        case CubicName::Pappus: return {{3, 2, 2, 1}, {1, 1, 2, 3}};
        case CubicName::Desargues: return {{3, 2, 2, 1, 1}, {1, 1, 2, 2, 3}};
        case CubicName::Dodecahedral: return {{3, 2, 1, 1, 1}, {1, 1, 1, 2, 3}};
    }
    throw UnknownGraph("bad cubic name");
}

inline IntersectionArray taylor_array(std::int64_t k, std::int64_t mu) {
    if (mu <= 0 || mu >= k) throw OutOfRange("taylor needs 0 < mu < k");
    return {{k, mu, 1}, {1, mu, k}};
}
} // namespace detail

inline IntersectionArray intersection_array(const FamilySpec& spec) {
    const auto& p = spec.params;
    switch (spec.family) {
        case Family::Complete: {
            if (p[0] < 2) throw OutOfRange("complete:n needs n >= 2");
            return {{p[0] - 1}, {1}};
        }
        case Family::Cycle: {
            std::int64_t n = p[0];
            if (n < 3) throw OutOfRange("cycle:n needs n >= 3");
            std::int64_t d = n / 2;
            IntersectionArray ia;
            ia.b.assign(static_cast<std::size_t>(d), 1);
            ia.b[0] = 2;
            ia.c.assign(static_cast<std::size_t>(d), 1);
            if (n % 2 == 0) ia.c.back() = 2;
            return ia;
        }
        case Family::Hamming: {
            std::int64_t d = p[0], q = p[1];
            if (d < 1 || q < 2) throw OutOfRange("hamming:d,q needs d >= 1, q >= 2");
            IntersectionArray ia;
            for (std::int64_t i = 0; i < d; ++i) ia.b.push_back((d - i) * (q - 1));
            for (std::int64_t i = 1; i <= d; ++i) ia.c.push_back(i);
            return ia;
        }
        case Family::Johnson: {
            std::int64_t n = p[0], d = p[1];
            if (d < 1 || n < 2 * d) throw OutOfRange("johnson:n,d needs n >= 2d, d >= 1");
            IntersectionArray ia;
            for (std::int64_t i = 0; i < d; ++i) ia.b.push_back((d - i) * (n - d - i));
            for (std::int64_t i = 1; i <= d; ++i) ia.c.push_back(i * i);
            return ia;
        }
        case Family::StronglyRegular: {
            std::int64_t n = p[0], k = p[1], alpha = p[2], beta = p[3];
            if (beta < 1 || k < 2 || alpha < 0) throw OutOfRange("srg needs beta >= 1, k >= 2");
            if (k - alpha - 1 < 1) throw OutOfRange("srg with diameter < 2");
            std::int64_t outer = k * (k - alpha - 1);
            if (outer % beta != 0 || n != 1 + k + outer / beta)
                throw OutOfRange("srg parameters are inconsistent with n");
            return {{k, k - alpha - 1}, {1, beta}};
        }
        case Family::Taylor: return detail::taylor_array(p[0], p[1]);
        case Family::Crown: {
            if (p[0] < 3) throw OutOfRange("crown:n needs n >= 3");
            return detail::taylor_array(p[0] - 1, p[0] - 2);
        }
        case Family::NamedCubic: return detail::cubic_array(spec.cubic);
    }
    throw UnknownGraph("bad family");
}

/// Concrete graph for oracle runs. Generic SRG and Taylor parameters have no
/// constructor here; the instances the tests need (Petersen, crowns) do.
inline ExplicitGraph build_explicit(const FamilySpec& spec) {
    const auto& p = spec.params;
    switch (spec.family) {
        case Family::Complete: return complete_graph(static_cast<std::size_t>(p[0]));
        case Family::Cycle: return cycle_graph(static_cast<std::size_t>(p[0]));
        case Family::Hamming:
            return hamming_graph(static_cast<std::size_t>(p[0]), static_cast<std::size_t>(p[1]));
        case Family::Johnson:
            return johnson_graph(static_cast<std::size_t>(p[0]), static_cast<std::size_t>(p[1]));
        case Family::StronglyRegular:
            if (p == std::vector<std::int64_t>{10, 3, 0, 1}) return petersen_graph();
            if (p[1] == p[0] - 2 && p[3] == p[0] - 2) // complete multipartite K_{n/2 x 2}
                return complement(crown_graph(static_cast<std::size_t>(p[0] / 2)));
            throw UnknownGraph("no explicit construction for " + spec.to_string());
        case Family::Taylor:
            if (p[1] == p[0] - 1) return crown_graph(static_cast<std::size_t>(p[0] + 1));
            throw UnknownGraph("no explicit construction for " + spec.to_string());
        case Family::Crown: return crown_graph(static_cast<std::size_t>(p[0]));
        case Family::NamedCubic:
            switch (spec.cubic) {
                case CubicName::K4: return complete_graph(4);
                case CubicName::K33: return complete_bipartite_graph(3, 3);
                case CubicName::Cube: return cube_graph();
                case CubicName::Petersen: return petersen_graph();
                case CubicName::Heawood: return heawood_graph();
                case CubicName::Pappus: return pappus_graph();
                case CubicName::Desargues: return desargues_graph();
                case CubicName::Dodecahedral: return dodecahedral_graph();
            }
    }
    throw UnknownGraph("bad family");
}

struct ClosedFormPhi {
    SpectralPolynomialSet set;
    bool conjectured = false;
};

namespace detail {

inline RationalPoly rp(std::vector<std::int64_t> coeffs) {
    RationalPoly p;
    p.c.reserve(coeffs.size());
    for (auto v : coeffs) p.c.emplace_back(v);
    return p;
}

inline PhiEntry exact_entry(RationalPoly p, std::int64_t mult) {
    PhiEntry e;
    e.poly = to_double_poly(p);
    e.mult = mult;
    e.exact = std::move(p);
    return e;
}

inline PhiEntry double_entry(DoublePoly p, std::int64_t mult) {
    PhiEntry e;
    e.poly = std::move(p);
    e.mult = mult;
    return e;
}

inline RationalPoly rpow(const RationalPoly& base, std::int64_t e) {
    RationalPoly acc = RationalPoly::constant(Rational(1));
    for (std::int64_t i = 0; i < e; ++i) acc = acc * base;
    return acc;
}

inline std::int64_t round_count(double x, const char* what) {
    double r = std::round(x);
    if (std::abs(x - r) > 1e-6 || r < 1.0)
        throw MultiplicityNotIntegral(std::string(what) + " multiplicity not integral");
    return static_cast<std::int64_t>(r);
}

} // namespace detail

/// Printed or derived closed-form spectral polynomial sets, ordered by
/// descending eigenvalue. Johnson with d >= 3 is the conjectured formula.
/// Families without a closed form return nothing.
inline std::optional<ClosedFormPhi> closed_form_phi(const FamilySpec& spec) {
    using detail::rp;
    const auto& p = spec.params;
    ClosedFormPhi out;

    switch (spec.family) {
        case Family::Complete: {
            std::int64_t n = p[0];
            out.set.entries.push_back(detail::exact_entry(rp({1, n - 1}), 1));
            out.set.entries.push_back(detail::exact_entry(rp({1, -1}), n - 1));
            return out;
        }
        case Family::Hamming: {
            std::int64_t d = p[0], q = p[1];
            RationalPoly lo = rp({1, -1});
            RationalPoly hi = rp({1, q - 1});
            for (std::int64_t m = 0; m <= d; ++m) {
                RationalPoly phi = detail::rpow(lo, m) * detail::rpow(hi, d - m);
                std::int64_t mult = detail::binomial(d, m);
                for (std::int64_t i = 0; i < m; ++i) mult *= q - 1;
                out.set.entries.push_back(detail::exact_entry(std::move(phi), mult));
            }
            return out;
        }
        case Family::Johnson: {
            std::int64_t n = p[0], d = p[1];
            for (std::int64_t i = 0; i <= d; ++i) {
                std::int64_t m = d - i;
                RationalPoly inner;
                inner.c.assign(static_cast<std::size_t>(m) + 1, Rational(0));
                for (std::int64_t k = 0; k <= m; ++k)
                    inner.c[static_cast<std::size_t>(k)] =
                        Rational(detail::binomial(m, k) * detail::binomial(n + m - 2 * d, k));
                RationalPoly phi = detail::rpow(rp({1, -1}), i) * inner;
                std::int64_t mult = detail::binomial(n, i) - detail::binomial(n, i - 1);
                out.set.entries.push_back(detail::exact_entry(std::move(phi), mult));
            }
            out.conjectured = d >= 3;
            return out;
        }
        case Family::StronglyRegular: {
            std::int64_t n = p[0], k = p[1], alpha = p[2], beta = p[3];
            intersection_array(spec); // parameter check
            std::int64_t disc = (alpha - beta) * (alpha - beta) + 4 * (k - beta);
            double sq = std::sqrt(static_cast<double>(disc));
            double theta = (static_cast<double>(alpha - beta) + sq) / 2.0;
            double tau = (static_cast<double>(alpha - beta) - sq) / 2.0;
            double m_theta = (static_cast<double>(n - 1) * (-tau) - static_cast<double>(k)) / (theta - tau);
            std::int64_t mt = detail::round_count(m_theta, "srg");
            std::int64_t s = std::llround(sq);
            bool integral = s * s == disc && (alpha - beta + s) % 2 == 0;
            out.set.entries.push_back(detail::exact_entry(rp({1, k, n - 1 - k}), 1));
            if (integral) {
                std::int64_t th = (alpha - beta + s) / 2, ta = (alpha - beta - s) / 2;
                out.set.entries.push_back(detail::exact_entry(rp({1, th, -(th + 1)}), mt));
                out.set.entries.push_back(detail::exact_entry(rp({1, ta, -(ta + 1)}), n - 1 - mt));
            } else {
                out.set.entries.push_back(
                    detail::double_entry(DoublePoly{{1.0, theta, -(theta + 1.0)}}, mt));
                out.set.entries.push_back(
                    detail::double_entry(DoublePoly{{1.0, tau, -(tau + 1.0)}}, n - 1 - mt));
            }
            return out;
        }
        case Family::Taylor:
        case Family::Crown: {
            std::int64_t k, mu;
            if (spec.family == Family::Crown) {
                k = p[0] - 1;
                mu = p[0] - 2;
            } else {
                k = p[0];
                mu = p[1];
            }
            detail::taylor_array(k, mu); // parameter check
            std::int64_t tr = k - 2 * mu - 1;
            std::int64_t disc = tr * tr + 4 * k;
            double sq = std::sqrt(static_cast<double>(disc));
            double tp = (static_cast<double>(tr) + sq) / 2.0;
            double tm = (static_cast<double>(tr) - sq) / 2.0;
            std::int64_t mp = detail::round_count(static_cast<double>(k + 1) * (-tm) / (tp - tm), "taylor");
            std::int64_t mm = k + 1 - mp;
            std::int64_t s = std::llround(sq);
            out.set.entries.push_back(detail::exact_entry(rp({1, k, k, 1}), 1));
            if (s * s == disc && (tr + s) % 2 == 0) {
                std::int64_t ip = (tr + s) / 2, im = (tr - s) / 2;
                out.set.entries.push_back(detail::exact_entry(rp({1, ip, -ip, -1}), mp));
                out.set.entries.push_back(detail::exact_entry(rp({1, -1, -1, 1}), k));
                out.set.entries.push_back(detail::exact_entry(rp({1, im, -im, -1}), mm));
            } else {
                out.set.entries.push_back(detail::double_entry(DoublePoly{{1.0, tp, -tp, -1.0}}, mp));
                out.set.entries.push_back(detail::exact_entry(rp({1, -1, -1, 1}), k));
                out.set.entries.push_back(detail::double_entry(DoublePoly{{1.0, tm, -tm, -1.0}}, mm));
            }
            return out;
        }
        case Family::NamedCubic: {
            auto pr = [](std::vector<std::int64_t> a, std::vector<std::int64_t> b) {
                return rp(std::move(a)) * rp(std::move(b));
            };
            auto dp = [](std::vector<double> a, std::vector<double> b) {
                return DoublePoly{std::move(a)} * DoublePoly{std::move(b)};
            };
            const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0), r5 = std::sqrt(5.0);
            const RationalPoly lo = rp({1, -1}), hi = rp({1, 1});
            auto& e = out.set.entries;
            switch (spec.cubic) {
                case CubicName::K4:
                    e.push_back(detail::exact_entry(rp({1, 3}), 1));
                    e.push_back(detail::exact_entry(rp({1, -1}), 3));
                    return out;
                case CubicName::K33:
                    e.push_back(detail::exact_entry(pr({1, 1}, {1, 2}), 1));
                    e.push_back(detail::exact_entry(pr({1, -1}, {1, 1}), 4));
                    e.push_back(detail::exact_entry(pr({1, -1}, {1, -2}), 1));
                    return out;
                case CubicName::Cube:
                    e.push_back(detail::exact_entry(detail::rpow(hi, 3), 1));
                    e.push_back(detail::exact_entry(lo * detail::rpow(hi, 2), 3));
                    e.push_back(detail::exact_entry(detail::rpow(lo, 2) * hi, 3));
                    e.push_back(detail::exact_entry(detail::rpow(lo, 3), 1));
                    return out;
                case CubicName::Petersen:
                    e.push_back(detail::exact_entry(rp({1, 3, 6}), 1));
                    e.push_back(detail::exact_entry(pr({1, -1}, {1, 2}), 5));
                    e.push_back(detail::exact_entry(pr({1, -1}, {1, -1}), 4));
                    return out;
                case CubicName::Heawood: {
                    DoublePoly band = to_double_poly(lo * hi);
                    e.push_back(detail::exact_entry(pr({1, 1}, {1, 2, 4}), 1));
                    e.push_back(detail::double_entry(band * DoublePoly{{1, r2}}, 6));
                    e.push_back(detail::double_entry(band * DoublePoly{{1, -r2}}, 6));
                    e.push_back(detail::exact_entry(pr({1, -1}, {1, -2, 4}), 1));
                    return out;
                }
                case CubicName::Pappus: {
                    DoublePoly band = to_double_poly(lo * hi);
                    e.push_back(detail::exact_entry(pr({1, 1}, {1, 2, 4, 2}), 1));
                    e.push_back(detail::double_entry(band * DoublePoly{{1, r3, 1}}, 6));
                    e.push_back(detail::exact_entry(lo * hi * rp({1, 0, -2}), 4));
                    e.push_back(detail::double_entry(band * DoublePoly{{1, -r3, 1}}, 6));
                    e.push_back(detail::exact_entry(pr({1, -1}, {1, -2, 4, -2}), 1));
                    return out;
                }
                case CubicName::Desargues:
                    e.push_back(detail::exact_entry(pr({1, 1}, {1, 2, 4, 2, 1}), 1));
                    e.push_back(detail::exact_entry(lo * detail::rpow(hi, 2) * rp({1, 1, 1}), 4));
                    e.push_back(detail::exact_entry(detail::rpow(lo, 2) * detail::rpow(hi, 3), 5));
                    e.push_back(detail::exact_entry(detail::rpow(lo, 3) * detail::rpow(hi, 2), 5));
                    e.push_back(detail::exact_entry(detail::rpow(lo, 2) * hi * rp({1, -1, 1}), 4));
                    e.push_back(detail::exact_entry(pr({1, -1}, {1, -2, 4, -2, 1}), 1));
                    return out;
                case CubicName::Dodecahedral:
                    e.push_back(detail::exact_entry(pr({1, 1}, {1, 2, 4, 2, 1}), 1));
                    e.push_back(detail::double_entry(
                        dp({1, -1}, {1, 1 + r5, 3 + r5, 1 + r5, 1}), 3));
                    e.push_back(detail::exact_entry(detail::rpow(lo, 2) * detail::rpow(hi, 3), 5));
                    e.push_back(detail::exact_entry(pr({1, -1}, {1, 1, -2, 1, 1}), 4));
                    e.push_back(detail::exact_entry(detail::rpow(lo, 2) * hi * rp({1, -1, 1}), 4));
                    e.push_back(detail::double_entry(
                        dp({1, -1}, {1, 1 - r5, 3 - r5, 1 - r5, 1}), 3));
                    return out;
            }
            throw UnknownGraph("bad cubic name");
        }
        default: return std::nullopt;
    }
}

struct SrgPdReport {
    bool uniform = false;
    double theta = 0.0, tau = 0.0;
    bool condition_holds = false; // k - 2 alpha + beta <= 4
    // -1/(tau+2), the endpoint quoted alongside this criterion; the root of
    // the factor 1+(tau+1)z sits at -1/(tau+1)
    std::optional<double> quoted_interval_end;
    std::optional<double> factor_root;
};

inline SrgPdReport srg_uniform_pd(std::int64_t n, std::int64_t k, std::int64_t alpha,
                                  std::int64_t beta) {
    FamilySpec spec{Family::StronglyRegular, {n, k, alpha, beta}};
    intersection_array(spec); // parameter check
    SrgPdReport rep;
    double disc = static_cast<double>((alpha - beta) * (alpha - beta) + 4 * (k - beta));
    double sq = std::sqrt(disc);
    rep.theta = (static_cast<double>(alpha - beta) + sq) / 2.0;
    rep.tau = (static_cast<double>(alpha - beta) - sq) / 2.0;
    rep.condition_holds = k - 2 * alpha + beta <= 4;
    rep.uniform = rep.condition_holds; // tau >= -2 is algebraically the same test
    bool tau_route = rep.tau >= -2.0 - 1e-9;
    if (tau_route != rep.uniform) throw SolverTolerance("srg criterion routes disagree");
    if (!rep.uniform) {
        rep.quoted_interval_end = -1.0 / (rep.tau + 2.0);
        rep.factor_root = -1.0 / (rep.tau + 1.0);
    }
    return rep;
}

struct TaylorEigenpair {
    double theta_plus = 0.0;
    double theta_minus = 0.0;
};

struct TaylorPdReport {
    bool uniform = false;
    TaylorEigenpair theta;
    bool condition_holds = false; // k >= 3(mu-1)
    bool triple_root = false;     // phi for theta- degenerates to (1-z)^3
};

inline TaylorPdReport taylor_uniform_pd(std::int64_t k, std::int64_t mu) {
    detail::taylor_array(k, mu); // parameter check
    TaylorPdReport rep;
    std::int64_t tr = k - 2 * mu - 1;
    double sq = std::sqrt(static_cast<double>(tr * tr + 4 * k));
    rep.theta.theta_plus = (static_cast<double>(tr) + sq) / 2.0;
    rep.theta.theta_minus = (static_cast<double>(tr) - sq) / 2.0;
    rep.condition_holds = k >= 3 * (mu - 1);
    rep.uniform = rep.condition_holds;
    bool theta_route = rep.theta.theta_minus >= -3.0 - 1e-9;
    if (theta_route != rep.uniform) throw SolverTolerance("taylor criterion routes disagree");
    rep.triple_root = k == 3 * (mu - 1);
    return rep;
}

} // namespace gdspec
