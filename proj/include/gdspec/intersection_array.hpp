#pragma once

#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "gdspec/errors.hpp"

namespace gdspec {

/// The combinatorial data {b0..b_{d-1}; c1..c_d} of a distance-regular graph:
/// from a vertex at distance i, b_i counts neighbors one shell further out and
/// c_i counts neighbors one shell back.
struct IntersectionArray {
    std::vector<std::int64_t> b; // b[i] = b_i, i = 0..d-1
    std::vector<std::int64_t> c; // c[i] = c_{i+1}, i = 0..d-1

    int diameter() const { return static_cast<int>(b.size()); }
    std::int64_t valency() const { return b.empty() ? 0 : b[0]; }

    std::int64_t b_at(int i) const { // b_d := 0
        return (i >= 0 && i < diameter()) ? b[static_cast<std::size_t>(i)] : 0;
    }
    std::int64_t c_at(int i) const { // c_0 := 0
        return (i >= 1 && i <= diameter()) ? c[static_cast<std::size_t>(i - 1)] : 0;
    }
    std::int64_t a_at(int i) const { return valency() - b_at(i) - c_at(i); }

    bool operator==(const IntersectionArray&) const = default;

    std::string to_string() const {
        std::ostringstream os;
        os << "{";
        for (std::size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
        os << ";";
        for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
        os << "}";
        return os.str();
    }
};

/// Vertex counts per distance shell, n_0..n_d, plus the graph order.
struct ShellSizes {
    std::vector<std::int64_t> n;
    std::int64_t total = 0;

    int diameter() const { return static_cast<int>(n.size()) - 1; }
    bool operator==(const ShellSizes&) const = default;
};

/// Shell sizes follow from n_{i+1} = n_i * b_i / c_{i+1}, which must divide
/// exactly; a non-integral quotient means the array is infeasible.
inline ShellSizes shell_sizes(const IntersectionArray& ia) {
    ShellSizes out;
    out.n.assign(static_cast<std::size_t>(ia.diameter()) + 1, 0);
    out.n[0] = 1;
    for (int i = 0; i < ia.diameter(); ++i) {
        std::int64_t num = out.n[static_cast<std::size_t>(i)] * ia.b_at(i);
        std::int64_t den = ia.c_at(i + 1);
        if (den <= 0 || num % den != 0)
            throw NonIntegralShell("shell " + std::to_string(i + 1) + " of " + ia.to_string() +
                                   " is not integral");
        out.n[static_cast<std::size_t>(i + 1)] = num / den;
    }
    out.total = std::accumulate(out.n.begin(), out.n.end(), std::int64_t{0});
    return out;
}

/// Structural feasibility: positive b (up to d-1) and c, nonnegative a_i, and
/// integral shell sizes. Throws OutOfRange / NonIntegralShell otherwise.
inline void validate(const IntersectionArray& ia) {
    int d = ia.diameter();
    if (d < 1) throw OutOfRange("intersection array needs diameter >= 1");
    if (ia.c.size() != ia.b.size())
        throw OutOfRange("intersection array needs matching b and c lengths");
    for (int i = 0; i < d; ++i) {
        if (ia.b_at(i) < 1) throw OutOfRange("b_" + std::to_string(i) + " must be >= 1 in " + ia.to_string());
        if (ia.c_at(i + 1) < 1) throw OutOfRange("c_" + std::to_string(i + 1) + " must be >= 1 in " + ia.to_string());
    }
    for (int i = 0; i <= d; ++i) {
        if (ia.a_at(i) < 0)
            throw OutOfRange("a_" + std::to_string(i) + " = k - b_i - c_i is negative in " + ia.to_string());
    }
    shell_sizes(ia); // throws NonIntegralShell on failure
}

} // namespace gdspec
