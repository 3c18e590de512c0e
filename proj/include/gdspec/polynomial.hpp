#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <string>
#include <vector>

#include "gdspec/rational.hpp"

namespace gdspec {

/// Dense univariate polynomial, coefficient k is the z^k term.
/// Trailing zeros are allowed; degree() looks past them.
template <typename T>
struct Poly {
    std::vector<T> c;

    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c(std::move(coeffs)) {}

    static Poly constant(T v) { return Poly{{std::move(v)}}; }
    static Poly z() { return Poly{{T(0), T(1)}}; }

    std::size_t size() const { return c.size(); }

    int degree() const {
        for (std::size_t i = c.size(); i-- > 0;)
            if (c[i] != T(0)) return static_cast<int>(i);
        return -1;
    }

    T coeff(std::size_t k) const { return k < c.size() ? c[k] : T(0); }

    T eval(const T& x) const {
        T acc(0);
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    }

    Poly derivative() const {
        if (c.size() <= 1) return Poly{{T(0)}};
        std::vector<T> d(c.size() - 1);
        for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * T(static_cast<long>(i));
        return Poly{std::move(d)};
    }

    Poly& operator+=(const Poly& o) {
        if (o.c.size() > c.size()) c.resize(o.c.size(), T(0));
        for (std::size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }

    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<T> r(std::max(a.c.size(), b.c.size()), T(0));
        for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
        return Poly{std::move(r)};
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.c.empty() || b.c.empty()) return Poly{};
        std::vector<T> r(a.c.size() + b.c.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i] == T(0)) continue;
            for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
        }
        return Poly{std::move(r)};
    }

    friend Poly operator*(const T& s, Poly p) {
        for (auto& v : p.c) v = s * v;
        return p;
    }

    friend Poly operator*(Poly p, const T& s) {
        for (auto& v : p.c) v = v * s;
        return p;
    }
};

using RationalPoly = Poly<Rational>;
using DoublePoly = Poly<double>;

inline DoublePoly to_double_poly(const RationalPoly& p) {
    std::vector<double> c(p.c.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = to_double(p.c[i]);
    return DoublePoly{std::move(c)};
}

inline double max_coeff_diff(const DoublePoly& a, const DoublePoly& b) {
    double m = 0.0;
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a.coeff(i) - b.coeff(i)));
    return m;
}

/// Human-readable form like "1 + 3z + 6z^2"; coefficients printed with %.12g.
inline std::string poly_to_string(const DoublePoly& p, const char* var = "z") {
    int deg = p.degree();
    if (deg < 0) return "0";
    std::string out;
    for (int k = 0; k <= deg; ++k) {
        double v = p.coeff(static_cast<std::size_t>(k));
        if (v == 0.0) continue;
        double mag = std::abs(v);
        if (out.empty()) {
            if (v < 0) out += "-";
        } else {
            out += (v < 0) ? " - " : " + ";
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", mag);
        bool unit = (mag == 1.0);
        if (k == 0) {
            out += buf;
        } else {
            if (!unit) out += buf;
            out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out.empty() ? "0" : out;
}

} // namespace gdspec
