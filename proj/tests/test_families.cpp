#include <catch2/catch_amalgamated.hpp>

#include "gdspec/families.hpp"
#include "gdspec/graph.hpp"
#include "gdspec/spectral.hpp"

using namespace gdspec;

namespace {

// positionwise: both sides are ordered by descending eigenvalue
void require_same_phi(const SpectralPolynomialSet& closed, const SpectralPolynomialSet& computed,
                      double tol = 1e-9) {
    REQUIRE(closed.entries.size() == computed.entries.size());
    for (std::size_t i = 0; i < closed.entries.size(); ++i) {
        CHECK(closed.entries[i].mult == computed.entries[i].mult);
        CHECK(max_coeff_diff(closed.entries[i].poly, computed.entries[i].poly) <= tol);
    }
}

} // namespace

TEST_CASE("family spec parsing") {
    auto h = parse_family_spec("hamming:8,2");
    CHECK(h.family == Family::Hamming);
    CHECK(h.params == std::vector<std::int64_t>{8, 2});
    CHECK(h.to_string() == "hamming:8,2");

    CHECK(parse_family_spec("cubic:heawood").cubic == CubicName::Heawood);
    CHECK(parse_family_spec("cubic:K3,3").cubic == CubicName::K33);
    CHECK(parse_family_spec("cubic:utility").cubic == CubicName::K33);
    CHECK(parse_family_spec("cubic:dodecahedron").cubic == CubicName::Dodecahedral);
    CHECK(parse_family_spec("SRG:10,3,0,1").family == Family::StronglyRegular);
    CHECK(parse_family_spec("crown:5").params == std::vector<std::int64_t>{5});

    CHECK_THROWS_AS(parse_family_spec("petersen"), ParseError);
    CHECK_THROWS_AS(parse_family_spec("cubic:octahedron"), ParseError);
    CHECK_THROWS_AS(parse_family_spec("hamming:8"), ParseError);
    CHECK_THROWS_AS(parse_family_spec("hamming:8,2,1"), ParseError);
    CHECK_THROWS_AS(parse_family_spec("hamming:8,x"), ParseError);
    CHECK_THROWS_AS(parse_family_spec("moore:57"), ParseError);
    CHECK_THROWS_AS(parse_family_spec("cubic:coxeter"), UnsupportedFamily);
    CHECK_THROWS_AS(parse_family_spec("cubic:foster"), UnsupportedFamily);
}

TEST_CASE("intersection arrays per family") {
    CHECK(intersection_array(parse_family_spec("complete:5")) == IntersectionArray{{4}, {1}});
    CHECK(intersection_array(parse_family_spec("cycle:6")) == IntersectionArray{{2, 1, 1}, {1, 1, 2}});
    CHECK(intersection_array(parse_family_spec("cycle:5")) == IntersectionArray{{2, 1}, {1, 1}});
    CHECK(intersection_array(parse_family_spec("hamming:3,3")) ==
          IntersectionArray{{6, 4, 2}, {1, 2, 3}});
    CHECK(intersection_array(parse_family_spec("johnson:7,2")) == IntersectionArray{{10, 4}, {1, 4}});
    CHECK(intersection_array(parse_family_spec("srg:10,3,0,1")) == IntersectionArray{{3, 2}, {1, 1}});
    CHECK(intersection_array(parse_family_spec("taylor:4,3")) ==
          IntersectionArray{{4, 3, 1}, {1, 3, 4}});
    CHECK(intersection_array(parse_family_spec("crown:4")) == IntersectionArray{{3, 2, 1}, {1, 2, 3}});
    CHECK(intersection_array(parse_family_spec("cubic:pappus")) ==
          IntersectionArray{{3, 2, 2, 1}, {1, 1, 2, 3}});

    CHECK_THROWS_AS(intersection_array(parse_family_spec("complete:1")), OutOfRange);
    CHECK_THROWS_AS(intersection_array(parse_family_spec("johnson:3,2")), OutOfRange);
    CHECK_THROWS_AS(intersection_array(parse_family_spec("taylor:3,0")), OutOfRange);
    // vertex count 1 + k + k(k-alpha-1)/beta must come out integral
    CHECK_THROWS_AS(intersection_array(parse_family_spec("srg:12,5,2,3")), OutOfRange);
    CHECK_THROWS_AS(intersection_array(parse_family_spec("srg:10,4,0,2")), OutOfRange);
}

TEST_CASE("explicit builders match their arrays") {
    const char* specs[] = {"complete:6",  "cycle:7",      "hamming:3,2", "hamming:2,4",
                           "johnson:6,2", "srg:10,3,0,1", "taylor:4,3",  "crown:6",
                           "cubic:k4",    "cubic:k33",    "cubic:cube",  "cubic:petersen",
                           "cubic:heawood", "cubic:pappus", "cubic:desargues",
                           "cubic:dodecahedral"};
    for (const char* s : specs) {
        INFO(s);
        auto spec = parse_family_spec(s);
        auto g = build_explicit(spec);
        auto rep = check_distance_regular(g, all_pairs_distances(g));
        REQUIRE(rep.array.has_value());
        CHECK(*rep.array == intersection_array(spec));
    }

    CHECK_THROWS_AS(build_explicit(parse_family_spec("srg:16,5,0,2")), UnknownGraph);
    CHECK_THROWS_AS(build_explicit(parse_family_spec("taylor:5,2")), UnknownGraph);
}

TEST_CASE("closed form polynomials match the recurrence") {
    const char* specs[] = {"complete:7",     "cubic:k4",       "cubic:k33",
                           "cubic:cube",     "cubic:petersen", "cubic:heawood",
                           "cubic:pappus",   "cubic:desargues", "cubic:dodecahedral",
                           "hamming:4,2",    "hamming:6,2",    "hamming:3,3",
                           "hamming:2,4",    "hamming:5,3",    "johnson:6,2",
                           "johnson:10,2",   "johnson:8,3",    "johnson:10,4",
                           "srg:10,3,0,1",   "srg:16,5,0,2",   "srg:5,2,0,1",
                           "taylor:3,2",     "taylor:4,3",     "taylor:15,6",
                           "taylor:27,10",   "crown:4",        "crown:7"};
    for (const char* s : specs) {
        INFO(s);
        auto spec = parse_family_spec(s);
        auto closed = closed_form_phi(spec);
        REQUIRE(closed.has_value());
        auto computed = spectral_polynomials(spectral_table(intersection_array(spec)));
        require_same_phi(closed->set, computed);
    }
    CHECK_FALSE(closed_form_phi(parse_family_spec("cycle:7")).has_value());
}

TEST_CASE("johnson closed form is flagged as conjectured beyond d = 2") {
    CHECK_FALSE(closed_form_phi(parse_family_spec("johnson:10,2"))->conjectured);
    CHECK(closed_form_phi(parse_family_spec("johnson:8,3"))->conjectured);
    CHECK(closed_form_phi(parse_family_spec("johnson:12,5"))->conjectured);
}

TEST_CASE("hamming closed form details") {
    auto cf = closed_form_phi(parse_family_spec("hamming:3,3"));
    REQUIRE(cf.has_value());
    auto& e = cf->set.entries;
    REQUIRE(e.size() == 4);
    // multiplicities binom(d,m)(q-1)^m
    CHECK(e[0].mult == 1);
    CHECK(e[1].mult == 6);
    CHECK(e[2].mult == 12);
    CHECK(e[3].mult == 8);
    // phi_m = (1-z)^m (1+(q-1)z)^{d-m}
    CHECK(poly_to_string(e[3].poly) == "1 - 3z + 3z^2 - z^3");
    CHECK(e[0].poly.eval(1.0) == 27.0);
    for (std::size_t i = 1; i < 4; ++i) CHECK(e[i].poly.eval(1.0) == 0.0);
}

TEST_CASE("johnson closed form for d = 2") {
    auto cf = closed_form_phi(parse_family_spec("johnson:7,2"));
    REQUIRE(cf.has_value());
    auto& e = cf->set.entries;
    REQUIRE(e.size() == 3);
    CHECK(e[0].mult == 1);
    CHECK(e[1].mult == 6);  // binom(7,1) - binom(7,0)
    CHECK(e[2].mult == 14); // binom(7,2) - binom(7,1)
    CHECK(poly_to_string(e[0].poly) == "1 + 10z + 10z^2");
    CHECK(poly_to_string(e[1].poly) == "1 + 3z - 4z^2");
    CHECK(poly_to_string(e[2].poly) == "1 - 2z + z^2");
}

TEST_CASE("infeasible taylor parameters are rejected") {
    CHECK_THROWS_AS(closed_form_phi(parse_family_spec("taylor:7,4")), MultiplicityNotIntegral);
    CHECK_THROWS_AS(spectral_table(intersection_array(parse_family_spec("taylor:7,4"))),
                    MultiplicityNotIntegral);
}

TEST_CASE("srg uniform positivity rule") {
    // petersen sits exactly on the boundary tau = -2
    auto pet = srg_uniform_pd(10, 3, 0, 1);
    CHECK(pet.uniform);
    CHECK(pet.condition_holds);
    CHECK(pet.tau == Catch::Approx(-2.0).margin(1e-12));
    CHECK_FALSE(pet.quoted_interval_end.has_value());

    // clebsch parameters fail: tau = -3
    auto cl = srg_uniform_pd(16, 5, 0, 2);
    CHECK_FALSE(cl.uniform);
    CHECK(cl.tau == Catch::Approx(-3.0).margin(1e-12));
    REQUIRE(cl.factor_root.has_value());
    CHECK(*cl.factor_root == Catch::Approx(0.5).margin(1e-12));
    REQUIRE(cl.quoted_interval_end.has_value());
    CHECK(*cl.quoted_interval_end == Catch::Approx(1.0).margin(1e-12));

    // pentagon: irrational tau = (-1-sqrt 5)/2 > -2, uniform
    CHECK(srg_uniform_pd(5, 2, 0, 1).uniform);
}

TEST_CASE("taylor uniform positivity rule") {
    auto halved_cube = taylor_uniform_pd(15, 6);
    CHECK(halved_cube.uniform);
    CHECK(halved_cube.triple_root); // k = 3(mu - 1) exactly
    auto gosset = taylor_uniform_pd(27, 10);
    CHECK(gosset.uniform);
    CHECK(gosset.triple_root);

    auto c4 = taylor_uniform_pd(3, 2);
    CHECK(c4.uniform);
    CHECK(c4.triple_root);
    auto c5 = taylor_uniform_pd(4, 3);
    CHECK_FALSE(c5.uniform);
    CHECK_FALSE(c5.triple_root);
    CHECK(c5.theta.theta_minus == Catch::Approx(-4.0).margin(1e-12));

    auto icosa = taylor_uniform_pd(5, 2);
    CHECK(icosa.uniform);
    CHECK_FALSE(icosa.triple_root);
}

TEST_CASE("crown uniformity cutoff") {
    CHECK(taylor_uniform_pd(2, 1).uniform);  // crown(3)
    CHECK(taylor_uniform_pd(3, 2).uniform);  // crown(4), boundary
    for (std::int64_t n = 5; n <= 12; ++n) { // crown(n), n >= 5
        INFO("crown " << n);
        CHECK_FALSE(taylor_uniform_pd(n - 1, n - 2).uniform);
    }
}
