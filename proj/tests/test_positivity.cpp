#include <catch2/catch_amalgamated.hpp>

#include "gdspec/families.hpp"
#include "gdspec/positivity.hpp"

using namespace gdspec;

namespace {

SpectralTable table_of(const std::string& spec) {
    return spectral_table(intersection_array(parse_family_spec(spec)));
}

} // namespace

TEST_CASE("competition domain checks") {
    CHECK_NOTHROW(check_competition_domain({1.0, 0.5, 0.25}));
    CHECK_NOTHROW(check_competition_domain({1.0, 1.0, 0.0}));
    CHECK_THROWS_AS(check_competition_domain({0.9, 0.5}), DomainViolation);
    CHECK_THROWS_AS(check_competition_domain({1.0, 0.4, 0.5}), DomainViolation);
    CHECK_THROWS_AS(check_competition_domain({1.0, 0.5, -0.1}), DomainViolation);

    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        auto f = random_competition_vector(rng, 4);
        REQUIRE(f.size() == 5);
        CHECK(f[0] == 1.0);
        CHECK_NOTHROW(check_competition_domain(f));
    }
    Rng a(9), b(9);
    CHECK(random_competition_vector(a, 3) == random_competition_vector(b, 3));
}

TEST_CASE("corner eigenvalues") {
    auto t = table_of("srg:10,3,0,1");
    auto corners = corner_eigenvalues(t);
    // column d' holds cumulative row sums of the coefficient table
    double expect[3][3] = {{1, 4, 10}, {1, 2, 0}, {1, -1, 0}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t dp = 0; dp < 3; ++dp) CHECK(corners(i, dp) == expect[i][dp]);
}

TEST_CASE("positivity over the competition domain") {
    SECTION("petersen fails at the d'=1 corner") {
        auto rep = pd_over_competition_domain(table_of("srg:10,3,0,1"));
        CHECK_FALSE(rep.nonneg);
        CHECK_FALSE(rep.strict_interior);
        REQUIRE(rep.witness_corner.has_value());
        CHECK(rep.witness_corner->first == 2);
        CHECK(rep.witness_corner->second == 1);
    }
    SECTION("complete graphs sit on the boundary") {
        auto rep = pd_over_competition_domain(table_of("complete:5"));
        CHECK(rep.nonneg);
        CHECK_FALSE(rep.strict_interior);
        CHECK_FALSE(rep.witness_corner.has_value());
    }
    SECTION("hypercubes dip negative at a middle corner") {
        auto rep = pd_over_competition_domain(table_of("hamming:4,2"));
        CHECK_FALSE(rep.nonneg);
        REQUIRE(rep.witness_corner.has_value());
        CHECK(rep.witness_corner->first == 2);
        CHECK(rep.witness_corner->second == 2);
        CHECK(rep.corners(2, 2) == -1.0);
        CHECK(rep.corners(0, 4) == 16.0);
    }
}

TEST_CASE("eigenvalues stay between the corner extremes") {
    const char* specs[] = {"srg:10,3,0,1", "cubic:heawood", "hamming:4,2"};
    for (const char* s : specs) {
        INFO(s);
        auto t = table_of(s);
        auto corners = corner_eigenvalues(t);
        const std::size_t d = t.diameter();
        Rng rng(101);
        for (int trial = 0; trial < 1000; ++trial) {
            auto f = random_competition_vector(rng, d);
            auto lam = eigenvalue_for_f(t, f);
            for (std::size_t i = 0; i <= d; ++i) {
                double lo = corners(i, 0), hi = corners(i, 0);
                for (std::size_t dp = 1; dp <= d; ++dp) {
                    lo = std::min(lo, corners(i, dp));
                    hi = std::max(hi, corners(i, dp));
                }
                CHECK(lam[i] >= lo - 1e-9);
                CHECK(lam[i] <= hi + 1e-9);
            }
        }
    }
}

TEST_CASE("uniform positivity of the one-parameter family") {
    SECTION("uniform cases") {
        for (const char* s : {"cubic:k4", "cubic:cube", "cubic:petersen", "cubic:desargues",
                              "cubic:dodecahedral", "hamming:6,2", "hamming:4,3", "hamming:3,5",
                              "johnson:8,2"}) {
            INFO(s);
            auto rep = uniform_pd(spectral_polynomials(table_of(s)));
            CHECK(rep.uniform);
            CHECK_FALSE(rep.z_star.has_value());
        }
    }
    SECTION("heawood crosses at 1/sqrt 2") {
        auto set = spectral_polynomials(table_of("cubic:heawood"));
        auto rep = uniform_pd(set);
        CHECK_FALSE(rep.uniform);
        REQUIRE(rep.z_star.has_value());
        CHECK(*rep.z_star == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-8));
        REQUIRE(rep.witness_index.has_value());
        CHECK(*rep.witness_index == 2); // the lambda = -sqrt 2 row
        CHECK(std::abs(set.entries[*rep.witness_index].poly.eval(*rep.z_star)) < 1e-9);
    }
    SECTION("pappus crosses at the same point, from the lambda = 0 row") {
        auto set = spectral_polynomials(table_of("cubic:pappus"));
        auto rep = uniform_pd(set);
        CHECK_FALSE(rep.uniform);
        REQUIRE(rep.z_star.has_value());
        CHECK(*rep.z_star == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-8));
        CHECK(std::abs(set.entries[*rep.witness_index].poly.eval(*rep.z_star)) < 1e-9);
    }
    SECTION("utility graph crosses at one half") {
        auto rep = uniform_pd(spectral_polynomials(table_of("cubic:k33")));
        CHECK_FALSE(rep.uniform);
        CHECK(*rep.z_star == Catch::Approx(0.5).margin(1e-8));
    }
}

TEST_CASE("uniform positivity agrees with the parameter rules") {
    struct SrgCase {
        std::int64_t n, k, a, b;
    };
    for (const auto& c : {SrgCase{10, 3, 0, 1}, SrgCase{16, 5, 0, 2}, SrgCase{5, 2, 0, 1},
                          SrgCase{16, 6, 2, 2}, SrgCase{50, 7, 0, 1}}) {
        INFO("srg " << c.n << "," << c.k << "," << c.a << "," << c.b);
        auto rule = srg_uniform_pd(c.n, c.k, c.a, c.b);
        FamilySpec spec{Family::StronglyRegular, {c.n, c.k, c.a, c.b}};
        auto scan = uniform_pd(closed_form_phi(spec)->set);
        CHECK(rule.uniform == scan.uniform);
    }
    struct TaylorCase {
        std::int64_t k, mu;
    };
    for (const auto& c : {TaylorCase{3, 2}, TaylorCase{4, 3}, TaylorCase{15, 6}, TaylorCase{27, 10},
                          TaylorCase{5, 2}, TaylorCase{9, 4}}) {
        INFO("taylor " << c.k << "," << c.mu);
        auto rule = taylor_uniform_pd(c.k, c.mu);
        FamilySpec spec{Family::Taylor, {c.k, c.mu}};
        auto scan = uniform_pd(closed_form_phi(spec)->set);
        CHECK(rule.uniform == scan.uniform);
    }
}

TEST_CASE("minimum eigenvalue bound") {
    auto t = table_of("srg:10,3,0,1");
    SECTION("delta function is tight") {
        auto rep = min_eigen_bound(t, {1.0, 0.0, 0.0});
        CHECK(rep.r == 1.0);
        CHECK(rep.min_lambda == 1.0);
        CHECK(rep.bound == 1.0);
        CHECK(rep.holds);
    }
    SECTION("all-ones function") {
        auto rep = min_eigen_bound(t, {1.0, 1.0, 1.0});
        CHECK(rep.r == 10.0);
        CHECK(rep.min_lambda == 0.0);
        CHECK(rep.holds);
    }
    SECTION("random sweep") {
        Rng rng(77);
        for (int trial = 0; trial < 500; ++trial) {
            auto f = random_competition_vector(rng, 2);
            CHECK(min_eigen_bound(t, f).holds);
        }
    }
    CHECK_THROWS_AS(min_eigen_bound(t, {1.0, 0.5}), DimensionMismatch);
}

TEST_CASE("aggregate positivity report") {
    auto t = table_of("srg:10,3,0,1");
    auto rep = positivity_report(t, spectral_polynomials(t), 1, 200);
    CHECK_FALSE(rep.pd_over_domain);
    CHECK_FALSE(rep.strict_interior);
    CHECK(rep.uniform);
    CHECK_FALSE(rep.z_star.has_value());
    CHECK(rep.min_bound_ok);
    CHECK(rep.negative_corner_rows == 1);
    CHECK(rep.corner_values(2, 1) == -1.0);

    auto t2 = table_of("cubic:heawood");
    auto rep2 = positivity_report(t2, spectral_polynomials(t2), 1, 200);
    CHECK_FALSE(rep2.uniform);
    REQUIRE(rep2.z_star.has_value());
    CHECK(*rep2.z_star == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-8));
}
