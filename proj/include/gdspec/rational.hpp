#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "gdspec/errors.hpp"

namespace gdspec {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

/// Renders "p" for integers, "p/q" otherwise.
inline std::string rational_to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "p" or "p/q", ignoring surrounding whitespace. Throws ParseError on
/// malformed input or zero denominator.
inline Rational parse_rational(const std::string& s) {
    auto trim = [&](std::string t) {
        auto from = t.find_first_not_of(" \t");
        auto to = t.find_last_not_of(" \t");
        if (from == std::string::npos) throw ParseError("malformed rational: " + s);
        return t.substr(from, to - from + 1);
    };
    auto slash = s.find('/');
    BigInt num, den = 1;
    try {
        num = BigInt(trim(slash == std::string::npos ? s : s.substr(0, slash)));
        if (slash != std::string::npos) den = BigInt(trim(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw ParseError("malformed rational: " + s);
    }
    if (den == 0) throw ParseError("rational with zero denominator: " + s);
    return Rational(num, den);
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

/// Nearest integer to a double when within tol, else nothing.
inline std::optional<std::int64_t> nearby_integer(double x, double tol) {
    double r = std::round(x);
    if (std::abs(x - r) <= tol && std::abs(r) < 9.0e15) return static_cast<std::int64_t>(r);
    return std::nullopt;
}

} // namespace gdspec
