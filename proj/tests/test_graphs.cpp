#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "gdspec/graph.hpp"
#include "gdspec/serialization.hpp"

using namespace gdspec;

static bool is_regular(const ExplicitGraph& g, std::size_t k) {
    for (const auto& nbrs : g.adj)
        if (nbrs.size() != k) return false;
    return true;
}

TEST_CASE("edge list construction and validation") {
    auto g = ExplicitGraph::from_edges(3, {{0, 1}, {1, 2}, {1, 0}});
    CHECK(g.edge_count() == 2); // duplicate collapsed
    CHECK(g.adjacent(0, 1));
    CHECK_FALSE(g.adjacent(0, 2));
    CHECK(g.edges() == std::vector<std::pair<std::int64_t, std::int64_t>>{{0, 1}, {1, 2}});

    CHECK_THROWS_AS(ExplicitGraph::from_edges(3, {{0, 3}}), ParseError);
    CHECK_THROWS_AS(ExplicitGraph::from_edges(3, {{-1, 0}}), ParseError);
    CHECK_THROWS_AS(ExplicitGraph::from_edges(3, {{1, 1}}), ParseError);
}

TEST_CASE("named graph sizes") {
    struct Row {
        ExplicitGraph g;
        std::size_t n, m, k;
    };
    Row rows[] = {
        {petersen_graph(), 10, 15, 3},       {heawood_graph(), 14, 21, 3},
        {pappus_graph(), 18, 27, 3},         {desargues_graph(), 20, 30, 3},
        {dodecahedral_graph(), 20, 30, 3},   {cube_graph(), 8, 12, 3},
        {complete_bipartite_graph(3, 3), 6, 9, 3},
        {hamming_graph(4, 2), 16, 32, 4},    {hamming_graph(3, 3), 27, 81, 6},
        {johnson_graph(7, 2), 21, 105, 10},  {crown_graph(4), 8, 12, 3},
        {crown_graph(5), 10, 20, 4},
    };
    for (const auto& r : rows) {
        CHECK(r.g.n == r.n);
        CHECK(r.g.edge_count() == r.m);
        CHECK(is_regular(r.g, r.k));
    }
}

TEST_CASE("bfs distances") {
    auto g = petersen_graph();
    auto dist = all_pairs_distances(g);
    CHECK(dist.diameter == 2);
    CHECK(dist(0, 0) == 0);

    CHECK(all_pairs_distances(heawood_graph()).diameter == 3);
    CHECK(all_pairs_distances(pappus_graph()).diameter == 4);
    CHECK(all_pairs_distances(desargues_graph()).diameter == 5);
    CHECK(all_pairs_distances(dodecahedral_graph()).diameter == 5);
    CHECK(all_pairs_distances(hamming_graph(5, 2)).diameter == 5);
    CHECK(all_pairs_distances(johnson_graph(8, 3)).diameter == 3);
    CHECK(all_pairs_distances(crown_graph(5)).diameter == 3);

    auto two = ExplicitGraph::from_edges(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(all_pairs_distances(two), Disconnected);
}

TEST_CASE("distance matrix assembly") {
    auto g = cycle_graph(5);
    auto dist = all_pairs_distances(g);
    auto m = assemble_m(dist, {1.0, 0.5, 0.25});
    CHECK(m(0, 0) == 1.0);
    CHECK(m(0, 1) == 0.5);
    CHECK(m(0, 2) == 0.25);
    CHECK(m(0, 4) == 0.5);
    CHECK_THROWS_AS(assemble_m(dist, {1.0, 0.5}), DimensionMismatch);
}

TEST_CASE("distance regularity detection") {
    struct Row {
        ExplicitGraph g;
        IntersectionArray ia;
    };
    Row rows[] = {
        {petersen_graph(), {{3, 2}, {1, 1}}},
        {heawood_graph(), {{3, 2, 2}, {1, 1, 3}}},
        {pappus_graph(), {{3, 2, 2, 1}, {1, 1, 2, 3}}},
        {desargues_graph(), {{3, 2, 2, 1, 1}, {1, 1, 2, 2, 3}}},
        {dodecahedral_graph(), {{3, 2, 1, 1, 1}, {1, 1, 1, 2, 3}}},
        {complete_graph(4), {{3}, {1}}},
        {complete_bipartite_graph(3, 3), {{3, 2}, {1, 3}}},
        {cube_graph(), {{3, 2, 1}, {1, 2, 3}}},
        {hamming_graph(3, 3), {{6, 4, 2}, {1, 2, 3}}},
        {johnson_graph(7, 2), {{10, 4}, {1, 4}}},
        {crown_graph(4), {{3, 2, 1}, {1, 2, 3}}},
        {crown_graph(5), {{4, 3, 1}, {1, 3, 4}}},
    };
    for (const auto& r : rows) {
        auto dist = all_pairs_distances(r.g);
        auto rep = check_distance_regular(r.g, dist);
        REQUIRE(rep.array.has_value());
        CHECK(*rep.array == r.ia);
        CHECK(rep.shell_regular);
        CHECK(shell_sizes(*rep.array).total == static_cast<std::int64_t>(r.g.n));
    }
}

TEST_CASE("prism is shell-regular but not distance-regular") {
    auto g = cartesian_product(complete_graph(2), complete_graph(3));
    auto dist = all_pairs_distances(g);
    auto rep = check_distance_regular(g, dist);
    CHECK(rep.shell_regular);
    CHECK(rep.shells == std::vector<std::int64_t>{1, 3, 2});
    CHECK_FALSE(rep.array.has_value());
    REQUIRE(rep.witness.has_value());
    auto [x, y] = *rep.witness;
    CHECK(x < static_cast<std::int64_t>(g.n));
    CHECK(y < static_cast<std::int64_t>(g.n));
}

TEST_CASE("path is not shell-regular") {
    auto g = path_graph(4);
    auto rep = check_distance_regular(g, all_pairs_distances(g));
    CHECK_FALSE(rep.shell_regular);
    CHECK_FALSE(rep.array.has_value());
}

TEST_CASE("cartesian product structure") {
    auto g = cartesian_product(petersen_graph(), complete_graph(2));
    CHECK(g.n == 20);
    CHECK(g.edge_count() == 15 * 2 + 10);
    // (a,b) ~ (a,b') and (a,b) ~ (a',b) for a ~ a'
    CHECK(g.adjacent(0, 1));
    CHECK(all_pairs_distances(g).diameter == 3);
}

TEST_CASE("complement and crown") {
    auto c5 = cycle_graph(5);
    auto comp = complement(c5);
    CHECK(comp.edge_count() == 5); // self-complementary
    auto crown = crown_graph(4);
    // bipartite double cover minus a matching: no (i,0)-(i,1) edges
    for (std::size_t i = 0; i < 4; ++i) CHECK_FALSE(crown.adjacent(2 * i, 2 * i + 1));
    CHECK_THROWS_AS(crown_graph(2), OutOfRange);
}

TEST_CASE("lcf and generalized petersen constructions") {
    CHECK_THROWS_AS(generalized_petersen_graph(4, 2), OutOfRange);
    CHECK_THROWS_AS(lcf_graph({}, 3), OutOfRange);
    auto gp = generalized_petersen_graph(5, 2);
    auto rep = check_distance_regular(gp, all_pairs_distances(gp));
    REQUIRE(rep.array.has_value());
    CHECK(*rep.array == IntersectionArray{{3, 2}, {1, 1}});
}

TEST_CASE("hamming labels") {
    auto g = hamming_graph(2, 3);
    REQUIRE(g.labels.size() == 9);
    CHECK(g.labels[0] == "00");
    CHECK(g.labels[5] == "21");
    auto j = johnson_graph(5, 2);
    CHECK(j.labels[0] == "{0,1}");
}

TEST_CASE("edge list io round trip") {
    auto g = desargues_graph();
    std::ostringstream os;
    write_edge_list(os, g);
    std::istringstream is(os.str());
    auto h = read_edge_list(is);
    CHECK(h.n == g.n);
    CHECK(h.edges() == g.edges());

    std::istringstream bad("3\n0 7\n");
    CHECK_THROWS_AS(read_edge_list(bad), ParseError);
}

TEST_CASE("json round trip") {
    auto g = petersen_graph();
    auto j = to_json(g);
    auto h = graph_from_json(j);
    CHECK(h.n == g.n);
    CHECK(h.edges() == g.edges());

    IntersectionArray ia{{3, 2, 2}, {1, 1, 3}};
    CHECK(intersection_array_from_json(to_json(ia)) == ia);
}
