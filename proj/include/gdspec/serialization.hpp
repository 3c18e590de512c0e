#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "gdspec/graph.hpp"
#include "gdspec/intersection_array.hpp"
#include "gdspec/markov.hpp"
#include "gdspec/positivity.hpp"
#include "gdspec/rational.hpp"
#include "gdspec/spectral.hpp"

namespace gdspec {

using json = nlohmann::json;

inline json to_json(const IntersectionArray& ia) {
    return json{{"b", ia.b}, {"c", ia.c}};
}

inline IntersectionArray intersection_array_from_json(const json& j) {
    IntersectionArray ia;
    if (!j.contains("b") || !j.contains("c")) throw ParseError("intersection array needs b and c");
    ia.b = j.at("b").get<std::vector<std::int64_t>>();
    ia.c = j.at("c").get<std::vector<std::int64_t>>();
    validate(ia);
    return ia;
}

inline json to_json(const ExplicitGraph& g) {
    json edges = json::array();
    for (auto [u, v] : g.edges()) edges.push_back(json::array({u, v}));
    return json{{"n", g.n}, {"edges", edges}};
}

inline ExplicitGraph graph_from_json(const json& j) {
    if (!j.contains("n") || !j.contains("edges")) throw ParseError("graph json needs n and edges");
    std::size_t n = j.at("n").get<std::size_t>();
    std::vector<std::pair<std::int64_t, std::int64_t>> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw ParseError("edge must be a pair");
        edges.emplace_back(e[0].get<std::int64_t>(), e[1].get<std::int64_t>());
    }
    return ExplicitGraph::from_edges(n, edges);
}

inline json to_json(const SpectralTable& t) {
    const std::size_t d = t.diameter();
    json coeff = json::array();
    for (std::size_t i = 0; i <= d; ++i) {
        json row = json::array();
        for (std::size_t m = 0; m <= d; ++m) row.push_back(t.coeff(i, m));
        coeff.push_back(std::move(row));
    }
    json j{{"lambdas", t.lambdas}, {"mults", t.mults}, {"coeff", coeff}};
    json exact = json::array();
    bool any = false;
    for (std::size_t i = 0; i <= d; ++i) {
        if (t.lambda_int[i]) {
            exact.push_back(t.lambda_int[i]->str());
            any = true;
        } else {
            exact.push_back(nullptr);
        }
    }
    if (any) j["lambdas_exact"] = std::move(exact);
    return j;
}

inline json to_json(const PhiEntry& e) {
    json j{{"coeff", e.poly.c}, {"mult", e.mult}, {"text", poly_to_string(e.poly)}};
    if (e.exact) {
        json ex = json::array();
        for (const auto& c : e.exact->c) ex.push_back(rational_to_string(c));
        j["coeff_exact"] = std::move(ex);
    }
    return j;
}

inline json to_json(const SpectralPolynomialSet& s) {
    json arr = json::array();
    for (const auto& e : s.entries) arr.push_back(to_json(e));
    return json{{"phi", arr}, {"total_mult", s.total_mult()}};
}

inline json to_json(const MarkovSolution& s) {
    json j{{"value", s.value}, {"mu", s.mu}, {"active_rows", s.active_rows}};
    if (s.value_exact) j["value_exact"] = rational_to_string(*s.value_exact);
    if (s.mu_exact) {
        json mu = json::array();
        for (const auto& v : *s.mu_exact) mu.push_back(rational_to_string(v));
        j["mu_exact"] = std::move(mu);
    }
    return j;
}

inline json to_json(const PositivityReport& r) {
    json corners = json::array();
    for (std::size_t i = 0; i < r.corner_values.rows; ++i) {
        json row = json::array();
        for (std::size_t m = 0; m < r.corner_values.cols; ++m) row.push_back(r.corner_values(i, m));
        corners.push_back(std::move(row));
    }
    json j{{"pd_over_domain", r.pd_over_domain},
           {"strict_interior", r.strict_interior},
           {"corner_values", corners},
           {"uniform", r.uniform},
           {"min_bound_ok", r.min_bound_ok},
           {"negative_corner_rows_experimental", r.negative_corner_rows}};
    if (r.z_star) j["z_star"] = *r.z_star;
    return j;
}

} // namespace gdspec
