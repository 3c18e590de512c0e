#include <catch2/catch_amalgamated.hpp>

#include "gdspec/families.hpp"
#include "gdspec/products.hpp"
#include "test_support.hpp"

using namespace gdspec;

namespace {

SpectralPolynomialSet set_of(const std::string& spec) {
    return spectral_polynomials(spectral_table(intersection_array(parse_family_spec(spec))));
}

SpectralPolynomialSet one_vertex() {
    PhiEntry e;
    e.poly.c = {1.0};
    e.mult = 1;
    e.exact = RationalPoly::constant(Rational(1));
    return {{e}};
}

} // namespace

TEST_CASE("k2 x k3 polynomial products") {
    auto prod = tensor_phi(set_of("complete:2"), set_of("complete:3"));
    REQUIRE(prod.entries.size() == 4);
    CHECK(poly_to_string(prod.entries[0].poly) == "1 + 3z + 2z^2");
    CHECK(poly_to_string(prod.entries[1].poly) == "1 - z^2");
    CHECK(poly_to_string(prod.entries[2].poly) == "1 + z - 2z^2");
    CHECK(poly_to_string(prod.entries[3].poly) == "1 - 2z + z^2");
    CHECK(prod.entries[0].mult == 1);
    CHECK(prod.entries[1].mult == 2);
    CHECK(prod.entries[2].mult == 1);
    CHECK(prod.entries[3].mult == 2);
    CHECK(prod.total_mult() == 6);

    // adjacency eigenvalue adds across factors
    double expect[] = {3.0, 0.0, 1.0, -2.0};
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(prod.entries[i].poly.derivative().eval(0.0) == expect[i]);
}

TEST_CASE("equal factor polynomials merge exactly") {
    auto prod = tensor_phi(set_of("complete:3"), set_of("complete:3"));
    REQUIRE(prod.entries.size() == 3);
    CHECK(prod.entries[0].mult == 1);
    CHECK(prod.entries[1].mult == 4); // (1+2z)(1-z) from both orders
    CHECK(prod.entries[2].mult == 4);
    CHECK(prod.entries[1].exact.has_value());
}

TEST_CASE("hamming graphs are born as powers of a complete graph") {
    SECTION("cube") {
        auto ps = product_spectrum({set_of("complete:2"), set_of("complete:2"), set_of("complete:2")});
        CHECK(ps.candidate_count == 8);
        CHECK(ps.distinct_count == 4);
        auto hamming = closed_form_phi(parse_family_spec("hamming:3,2"));
        REQUIRE(hamming.has_value());
        CHECK(support::phi_multiset_equal(ps.combined, hamming->set, 1e-12));
    }
    SECTION("h(4,3)") {
        std::vector<SpectralPolynomialSet> factors(4, set_of("complete:3"));
        auto ps = product_spectrum(factors);
        CHECK(ps.candidate_count == 16);
        CHECK(ps.distinct_count == 5);
        auto hamming = closed_form_phi(parse_family_spec("hamming:4,3"));
        CHECK(support::phi_multiset_equal(ps.combined, hamming->set, 1e-12));
        CHECK(ps.combined.total_mult() == 81);
    }
}

TEST_CASE("single vertex factor is the identity") {
    auto pet = set_of("srg:10,3,0,1");
    auto prod = tensor_phi(pet, one_vertex());
    CHECK(support::phi_multiset_equal(prod, pet, 0.0));
}

TEST_CASE("tensor product is associative") {
    auto a = set_of("complete:2");
    auto b = set_of("complete:3");
    auto c = set_of("cycle:5");
    auto left = tensor_phi(tensor_phi(a, b), c);
    auto right = tensor_phi(a, tensor_phi(b, c));
    CHECK(support::phi_multiset_equal(left, right, 1e-12));
}

TEST_CASE("tensor polynomials match a dense oracle") {
    struct Pair {
        const char* a;
        const char* b;
    };
    Pair pairs[] = {{"complete:2", "complete:3"},
                    {"complete:4", "cycle:5"},
                    {"cycle:5", "srg:10,3,0,1"},
                    {"srg:10,3,0,1", "srg:10,3,0,1"}};
    for (const auto& pr : pairs) {
        INFO(pr.a << " x " << pr.b);
        auto combined = tensor_phi(set_of(pr.a), set_of(pr.b));
        auto g = cartesian_product(build_explicit(parse_family_spec(pr.a)),
                                   build_explicit(parse_family_spec(pr.b)));
        auto oracle = support::oracle_phi(g);
        CHECK(support::phi_multiset_equal(combined, oracle, 1e-8));
    }
}

TEST_CASE("sum decompositions collapse to one function") {
    SECTION("adjacency") {
        auto dec = adjacency_decomposition(2, 3);
        auto f = combined_values(dec);
        CHECK(f == std::vector<double>{0, 1, 0, 0, 0, 0});
    }
    SECTION("classical distance") {
        auto dec = classical_distance_decomposition(2, 2);
        auto f = combined_values(dec);
        CHECK(f == std::vector<double>{0, 1, 2, 3, 4});
    }
    SECTION("rejects k+l inconsistency") {
        SumDecomposition dec{{{{1.0, 1.0}, {1.0, 0.0}}}};
        CHECK_THROWS_AS(combined_values(dec), NotSumDecomposable);
    }
    SECTION("rejects ragged terms") {
        SumDecomposition dec{{{{1.0}, {1.0}}, {{1.0, 0.0}, {1.0}}}};
        CHECK_THROWS_AS(combined_values(dec), DimensionMismatch);
    }
}

TEST_CASE("assembled product matrices agree with direct assembly") {
    auto g = complete_graph(3);
    auto h = complete_graph(4);
    auto dg = all_pairs_distances(g);
    auto dh = all_pairs_distances(h);
    auto dprod = all_pairs_distances(cartesian_product(g, h));

    SECTION("adjacency split") {
        auto dec = adjacency_decomposition(1, 1);
        auto direct = assemble_m(dprod, combined_values(dec));
        auto viaten = tensor_m(dec, dg, dh);
        CHECK((direct - viaten).max_abs() == 0.0);
    }
    SECTION("classical distance split") {
        auto dec = classical_distance_decomposition(1, 1);
        auto direct = assemble_m(dprod, combined_values(dec));
        auto viaten = tensor_m(dec, dg, dh);
        CHECK((direct - viaten).max_abs() == 0.0);
    }
}
