#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gdspec/errors.hpp"
#include "gdspec/intersection_array.hpp"
#include "gdspec/linalg.hpp"
#include "gdspec/parallel.hpp"

namespace gdspec {

/// Simple undirected graph held as adjacency lists. Builders below produce
/// connected graphs; arbitrary edge lists are validated on construction.
struct ExplicitGraph {
    std::size_t n = 0;
    std::vector<std::vector<std::int32_t>> adj;
    std::vector<std::string> labels; // optional, empty when unused

    static ExplicitGraph from_edges(std::size_t n,
                                    const std::vector<std::pair<std::int64_t, std::int64_t>>& edges) {
        ExplicitGraph g;
        g.n = n;
        g.adj.assign(n, {});
        std::set<std::pair<std::int64_t, std::int64_t>> seen;
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= static_cast<std::int64_t>(n) ||
                v >= static_cast<std::int64_t>(n))
                throw ParseError("edge endpoint out of range");
            if (u == v) throw ParseError("loop edge");
            auto key = std::minmax(u, v);
            if (!seen.insert(key).second) continue;
            g.adj[static_cast<std::size_t>(u)].push_back(static_cast<std::int32_t>(v));
            g.adj[static_cast<std::size_t>(v)].push_back(static_cast<std::int32_t>(u));
        }
        for (auto& nbrs : g.adj) std::sort(nbrs.begin(), nbrs.end());
        return g;
    }

    std::size_t edge_count() const {
        std::size_t deg_sum = 0;
        for (const auto& nbrs : adj) deg_sum += nbrs.size();
        return deg_sum / 2;
    }

    bool adjacent(std::size_t u, std::size_t v) const {
        const auto& nbrs = adj[u];
        return std::binary_search(nbrs.begin(), nbrs.end(), static_cast<std::int32_t>(v));
    }

    std::vector<std::pair<std::int64_t, std::int64_t>> edges() const {
        std::vector<std::pair<std::int64_t, std::int64_t>> out;
        for (std::size_t u = 0; u < n; ++u)
            for (std::int32_t v : adj[u])
                if (static_cast<std::size_t>(v) > u)
                    out.emplace_back(static_cast<std::int64_t>(u), v);
        return out;
    }
};

struct DistanceData {
    std::size_t n = 0;
    std::vector<std::int32_t> d; // row-major n*n
    std::int32_t diameter = 0;

    std::int32_t operator()(std::size_t x, std::size_t y) const { return d[x * n + y]; }
};

inline DistanceData all_pairs_distances(const ExplicitGraph& g) {
    DistanceData dd;
    dd.n = g.n;
    dd.d.assign(g.n * g.n, -1);
    std::int32_t global_max = 0;
    for (std::size_t src = 0; src < g.n; ++src) {
        std::int32_t* row = dd.d.data() + src * g.n;
        row[src] = 0;
        std::queue<std::int32_t> q;
        q.push(static_cast<std::int32_t>(src));
        while (!q.empty()) {
            std::int32_t u = q.front();
            q.pop();
            for (std::int32_t v : g.adj[static_cast<std::size_t>(u)]) {
                if (row[v] < 0) {
                    row[v] = row[u] + 1;
                    global_max = std::max(global_max, row[v]);
                    q.push(v);
                }
            }
        }
        for (std::size_t v = 0; v < g.n; ++v)
            if (row[v] < 0) throw Disconnected("graph is not connected");
    }
    dd.diameter = global_max;
    return dd;
}

inline Matrix assemble_m(const DistanceData& dist, const std::vector<double>& f) {
    if (f.size() != static_cast<std::size_t>(dist.diameter) + 1)
        throw DimensionMismatch("f must have diameter+1 entries");
    Matrix m(dist.n, dist.n);
    for (std::size_t x = 0; x < dist.n; ++x)
        for (std::size_t y = 0; y < dist.n; ++y)
            m(x, y) = f[static_cast<std::size_t>(dist(x, y))];
    return m;
}

struct RegularityReport {
    std::optional<IntersectionArray> array; // set iff distance-regular
    bool shell_regular = false;
    std::vector<std::int64_t> shells; // per-vertex shell counts when shell_regular
    std::optional<std::array<std::int64_t, 2>> witness; // pair breaking constancy
};

/// Distance-regularity test per the definition: first the cheap b/c layer
/// counts, then full constancy of |G_j(x) ∩ G_k(y)| over pairs at each
/// distance. Returns a witness pair on failure instead of throwing.
inline RegularityReport check_distance_regular(const ExplicitGraph& g, const DistanceData& dist) {
    RegularityReport rep;
    const std::size_t n = g.n;
    const std::int32_t diam = dist.diameter;

    std::vector<std::int64_t> shells(static_cast<std::size_t>(diam) + 1, 0);
    for (std::size_t y = 0; y < n; ++y) ++shells[static_cast<std::size_t>(dist(0, y))];
    rep.shells = shells;
    rep.shell_regular = true;
    for (std::size_t x = 1; x < n && rep.shell_regular; ++x) {
        std::vector<std::int64_t> s(static_cast<std::size_t>(diam) + 1, 0);
        for (std::size_t y = 0; y < n; ++y) ++s[static_cast<std::size_t>(dist(x, y))];
        if (s != shells) {
            rep.shell_regular = false;
            rep.shells.clear();
        }
    }

    // Layer counts b_i(x,y), c_i(x,y) from the neighbors of y.
    std::vector<std::int64_t> b_ref(static_cast<std::size_t>(diam) + 1, -1);
    std::vector<std::int64_t> c_ref(static_cast<std::size_t>(diam) + 1, -1);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            const std::int32_t i = dist(x, y);
            std::int64_t b = 0, c = 0;
            for (std::int32_t z : g.adj[y]) {
                const std::int32_t dz = dist(x, static_cast<std::size_t>(z));
                if (dz == i + 1) ++b;
                else if (dz == i - 1) ++c;
            }
            auto idx = static_cast<std::size_t>(i);
            if (b_ref[idx] < 0) {
                b_ref[idx] = b;
                c_ref[idx] = c;
            } else if (b_ref[idx] != b || c_ref[idx] != c) {
                rep.witness = {static_cast<std::int64_t>(x), static_cast<std::int64_t>(y)};
                return rep;
            }
        }
    }

    // Full intersection-number constancy n_{j,k}(x,y); reference table per
    // distance comes from the first pair seen at that distance.
    const std::size_t dd1 = static_cast<std::size_t>(diam) + 1;
    std::vector<std::vector<std::int32_t>> ref(dd1);
    {
        // Seed reference tables serially from vertex 0's row.
        for (std::size_t y = 0; y < n; ++y) {
            auto i = static_cast<std::size_t>(dist(0, y));
            if (!ref[i].empty()) continue;
            std::vector<std::int32_t> t(dd1 * dd1, 0);
            for (std::size_t z = 0; z < n; ++z)
                ++t[static_cast<std::size_t>(dist(0, z)) * dd1 + static_cast<std::size_t>(dist(z, y))];
            ref[i] = std::move(t);
        }
        for (std::size_t i = 0; i < dd1; ++i)
            if (ref[i].empty()) ref[i].assign(dd1 * dd1, -1); // distance unused from v0
    }
    std::vector<std::optional<std::array<std::int64_t, 2>>> witness_per_x(n);
    parallel_for(n, [&](std::size_t x) {
        std::vector<std::int32_t> t(dd1 * dd1);
        for (std::size_t y = 0; y < n; ++y) {
            std::fill(t.begin(), t.end(), 0);
            for (std::size_t z = 0; z < n; ++z)
                ++t[static_cast<std::size_t>(dist(x, z)) * dd1 + static_cast<std::size_t>(dist(z, y))];
            auto i = static_cast<std::size_t>(dist(x, y));
            if (ref[i][0] < 0 || ref[i] != t) {
                witness_per_x[x] = {static_cast<std::int64_t>(x), static_cast<std::int64_t>(y)};
                return;
            }
        }
    });
    for (const auto& w : witness_per_x)
        if (w) {
            rep.witness = w;
            return rep;
        }

    IntersectionArray ia;
    for (std::int32_t i = 0; i < diam; ++i) ia.b.push_back(b_ref[static_cast<std::size_t>(i)]);
    for (std::int32_t i = 1; i <= diam; ++i) ia.c.push_back(c_ref[static_cast<std::size_t>(i)]);
    validate(ia);
    rep.array = ia;
    return rep;
}

// ---- builders ----

inline ExplicitGraph complete_graph(std::size_t n) {
    if (n < 2) throw OutOfRange("complete graph needs n >= 2");
    std::vector<std::pair<std::int64_t, std::int64_t>> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            e.emplace_back(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j));
    return ExplicitGraph::from_edges(n, e);
}

inline ExplicitGraph cycle_graph(std::size_t n) {
    if (n < 3) throw OutOfRange("cycle needs n >= 3");
    std::vector<std::pair<std::int64_t, std::int64_t>> e;
    for (std::size_t i = 0; i < n; ++i)
        e.emplace_back(static_cast<std::int64_t>(i), static_cast<std::int64_t>((i + 1) % n));
    return ExplicitGraph::from_edges(n, e);
}

inline ExplicitGraph path_graph(std::size_t n) {
    if (n < 2) throw OutOfRange("path needs n >= 2");
    std::vector<std::pair<std::int64_t, std::int64_t>> e;
    for (std::size_t i = 0; i + 1 < n; ++i)
        e.emplace_back(static_cast<std::int64_t>(i), static_cast<std::int64_t>(i + 1));
    return ExplicitGraph::from_edges(n, e);
}

inline ExplicitGraph complete_bipartite_graph(std::size_t a, std::size_t b) {
    if (a < 1 || b < 1) throw OutOfRange("bipartite parts must be nonempty");
    std::vector<std::pair<std::int64_t, std::int64_t>> e;
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < b; ++j)
            e.emplace_back(static_cast<std::int64_t>(i), static_cast<std::int64_t>(a + j));
    return ExplicitGraph::from_edges(a + b, e);
}

/// Vertices are d-tuples over {0..q-1}; adjacent when they differ in one slot.
inline ExplicitGraph hamming_graph(std::size_t d, std::size_t q) {
    if (d < 1 || q < 2) throw OutOfRange("hamming needs d >= 1, q >= 2");
    std::size_t n = 1;
    for (std::size_t i = 0; i < d; ++i) {
        if (n > 200000 / q) throw OutOfRange("hamming graph too large");
        n *= q;
    }
    std::vector<std::pair<std::int64_t, std::int64_t>> e;
    std::vector<std::string> labels(n);
    std::size_t stride = 1;
    for (std::size_t v = 0; v < n; ++v) {
        std::string lab;
        std::size_t t = v;
        for (std::size_t pos = 0; pos < d; ++pos) {
            lab += static_cast<char>('0' + t % q);
            t /= q;
        }
        labels[v] = lab;
    }
    for (std::size_t pos = 0; pos < d; ++pos, stride *= q) {
        for (std::size_t v = 0; v < n; ++v) {
            std::size_t digit = (v / stride) % q;
            for (std::size_t other = digit + 1; other < q; ++other) {
                std::size_t w = v + (other - digit) * stride;
                e.emplace_back(static_cast<std::int64_t>(v), static_cast<std::int64_t>(w));
            }
        }
    }
    auto g = ExplicitGraph::from_edges(n, e);
    g.labels = std::move(labels);
    return g;
}

namespace detail {
inline void subsets_rec(std::size_t n, std::size_t d, std::size_t start,
                        std::vector<std::int32_t>& cur,
                        std::vector<std::vector<std::int32_t>>& out) {
    if (cur.size() == d) {
        out.push_back(cur);
        return;
    }
    for (std::size_t v = start; v < n; ++v) {
        cur.push_back(static_cast<std::int32_t>(v));
        subsets_rec(n, d, v + 1, cur, out);
        cur.pop_back();
    }
}

inline std::vector<std::vector<std::int32_t>> all_subsets(std::size_t n, std::size_t d) {
    std::vector<std::vector<std::int32_t>> out;
    std::vector<std::int32_t> cur;
    subsets_rec(n, d, 0, cur, out);
    return out;
}

inline std::size_t intersection_size(const std::vector<std::int32_t>& a,
                                     const std::vector<std::int32_t>& b) {
    std::size_t i = 0, j = 0, c = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (a[i] > b[j]) ++j;
        else ++c, ++i, ++j;
    }
    return c;
}

inline std::string subset_label(const std::vector<std::int32_t>& s) {
    std::string lab = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) lab += ",";
        lab += std::to_string(s[i]);
    }
    return lab + "}";
}
} // namespace detail

/// Vertices are d-subsets of an n-set; adjacent when they share d-1 elements.
inline ExplicitGraph johnson_graph(std::size_t n, std::size_t d) {
    if (d < 1 || n < 2 * d) throw OutOfRange("johnson needs n >= 2d, d >= 1");
    auto subsets = detail::all_subsets(n, d);
    std::vector<std::pair<std::int64_t, std::int64_t>> e;
    for (std::size_t i = 0; i < subsets.size(); ++i)
        for (std::size_t j = i + 1; j < subsets.size(); ++j)
            if (detail::intersection_size(subsets[i], subsets[j]) == d - 1)
                e.emplace_back(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j));
    auto g = ExplicitGraph::from_edges(subsets.size(), e);
    g.labels.resize(subsets.size());
    for (std::size_t i = 0; i < subsets.size(); ++i) g.labels[i] = detail::subset_label(subsets[i]);
    return g;
}

/// Vertices are d-subsets; adjacent when disjoint. Kneser(5,2) is Petersen.
inline ExplicitGraph kneser_graph(std::size_t n, std::size_t d) {
    if (d < 1 || n < 2 * d) throw OutOfRange("kneser needs n >= 2d");
    auto subsets = detail::all_subsets(n, d);
    std::vector<std::pair<std::int64_t, std::int64_t>> e;
    for (std::size_t i = 0; i < subsets.size(); ++i)
        for (std::size_t j = i + 1; j < subsets.size(); ++j)
            if (detail::intersection_size(subsets[i], subsets[j]) == 0)
                e.emplace_back(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j));
    auto g = ExplicitGraph::from_edges(subsets.size(), e);
    g.labels.resize(subsets.size());
    for (std::size_t i = 0; i < subsets.size(); ++i) g.labels[i] = detail::subset_label(subsets[i]);
    return g;
}

inline ExplicitGraph petersen_graph() { return kneser_graph(5, 2); }

inline ExplicitGraph complement(const ExplicitGraph& g) {
    std::vector<std::pair<std::int64_t, std::int64_t>> e;
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = i + 1; j < g.n; ++j)
            if (!g.adjacent(i, j))
                e.emplace_back(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j));
    return ExplicitGraph::from_edges(g.n, e);
}

inline ExplicitGraph cartesian_product(const ExplicitGraph& g, const ExplicitGraph& h) {
    const std::size_t n = g.n * h.n;
    std::vector<std::pair<std::int64_t, std::int64_t>> e;
    auto id = [&](std::size_t a, std::size_t b) {
        return static_cast<std::int64_t>(a * h.n + b);
    };
    for (std::size_t a = 0; a < g.n; ++a)
        for (std::size_t b = 0; b < h.n; ++b) {
            for (std::int32_t b2 : h.adj[b])
                if (static_cast<std::size_t>(b2) > b) e.emplace_back(id(a, b), id(a, static_cast<std::size_t>(b2)));
            for (std::int32_t a2 : g.adj[a])
                if (static_cast<std::size_t>(a2) > a) e.emplace_back(id(a, b), id(static_cast<std::size_t>(a2), b));
        }
    return ExplicitGraph::from_edges(n, e);
}

/// Two independent n-sets; (i,0) joined to (j,1) whenever i != j. Built as
/// the complement of K_n x K_2 so the product and complement paths get
/// exercised together.
inline ExplicitGraph crown_graph(std::size_t n) {
    if (n < 3) throw OutOfRange("crown needs n >= 3");
    return complement(cartesian_product(complete_graph(n), complete_graph(2)));
}

inline ExplicitGraph generalized_petersen_graph(std::size_t n, std::size_t k) {
    if (n < 3 || k < 1 || 2 * k >= n) throw OutOfRange("generalized petersen needs 1 <= k < n/2");
    std::vector<std::pair<std::int64_t, std::int64_t>> e;
    auto outer = [&](std::size_t i) { return static_cast<std::int64_t>(i % n); };
    auto inner = [&](std::size_t i) { return static_cast<std::int64_t>(n + i % n); };
    for (std::size_t i = 0; i < n; ++i) {
        e.emplace_back(outer(i), outer(i + 1));
        e.emplace_back(outer(i), inner(i));
        e.emplace_back(inner(i), inner(i + k));
    }
    return ExplicitGraph::from_edges(2 * n, e);
}

/// Cubic graph from an LCF code: a Hamiltonian cycle on len(code)*repeats
/// vertices plus the chord i -> i + code[i mod len] for every i.
inline ExplicitGraph lcf_graph(const std::vector<std::int64_t>& code, std::size_t repeats) {
    const std::size_t n = code.size() * repeats;
    if (code.empty() || n < 3) throw OutOfRange("bad LCF code");
    std::vector<std::pair<std::int64_t, std::int64_t>> e;
    const auto m = static_cast<std::int64_t>(n);
    for (std::size_t i = 0; i < n; ++i) {
        e.emplace_back(static_cast<std::int64_t>(i), static_cast<std::int64_t>((i + 1) % n));
        std::int64_t j = (static_cast<std::int64_t>(i) + code[i % code.size()]) % m;
        if (j < 0) j += m;
        e.emplace_back(static_cast<std::int64_t>(i), j);
    }
    return ExplicitGraph::from_edges(n, e);
}

inline ExplicitGraph heawood_graph() { return lcf_graph({5, -5}, 7); }
inline ExplicitGraph pappus_graph() { return lcf_graph({5, 7, -7, 7, -7, -5}, 3); }
inline ExplicitGraph desargues_graph() { return generalized_petersen_graph(10, 3); }
inline ExplicitGraph dodecahedral_graph() { return generalized_petersen_graph(10, 2); }
inline ExplicitGraph cube_graph() { return hamming_graph(3, 2); }

// ---- edge-list text IO ----

inline ExplicitGraph read_edge_list(std::istream& in) {
    std::vector<std::pair<std::int64_t, std::int64_t>> e;
    std::int64_t max_v = -1;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::int64_t u, v;
        if (!(ls >> u)) continue; // blank line
        if (!(ls >> v)) throw ParseError("edge line needs two vertex ids: " + line);
        e.emplace_back(u, v);
        max_v = std::max({max_v, u, v});
    }
    if (e.empty()) throw ParseError("empty edge list");
    return ExplicitGraph::from_edges(static_cast<std::size_t>(max_v) + 1, e);
}

inline void write_edge_list(std::ostream& out, const ExplicitGraph& g) {
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
}

} // namespace gdspec
