#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "support.hpp"

using namespace quadrisect;

namespace {

// Hexagon with edges 0, 2, 4 on first-family rulings of z = xy. The
// connecting edges 1 and 3 land on second-family rulings (x = 3 and x = -3),
// so condition (b) must fire for them.
PolygonalKnot ruled_hexagon() {
    return build_knot({
        {-3, 0, 0}, {3, 0, 0},    // edge 0 on y = 0 ruling
        {3, 1, 3}, {-3, 1, -3},   // edge 2 on y = 1 ruling
        {-3, -1, 3}, {3, -1, -3}, // edge 4 on y = -1 ruling
    });
}

} // namespace

TEST_CASE("tetrahedron builds into a 4-edge knot") {
    const PolygonalKnot k =
        build_knot({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(k.edge_count() == 4);
    CHECK(k.edge(3).b == k.vertices()[0]);
    CHECK(k.diameter() > 0.0);
}

TEST_CASE("planar square builds but fails general position") {
    const PolygonalKnot k =
        build_knot({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}});
    const GeneralPositionReport gp = check_general_position(k);
    CHECK_FALSE(gp.pass);
    REQUIRE(gp.coplanar_violations.size() == 1);
    CHECK(gp.coplanar_violations[0] == std::array<int, 4>{0, 1, 2, 3});
}

TEST_CASE("repeated vertex is rejected") {
    CHECK_THROWS_AS(build_knot({{0, 0, 0}, {1, 0, 0}, {0, 0, 0}}),
                    PreconditionError);
}

TEST_CASE("too few vertices are rejected") {
    CHECK_THROWS_AS(build_knot({{0, 0, 0}, {1, 0, 0}}), PreconditionError);
}

TEST_CASE("crossing edges are rejected") {
    // bowtie: edges {0,1} and {2,3} cross at (0.5, 0.5, 0)
    CHECK_THROWS_AS(build_knot({{0, 0, 0}, {1, 1, 0}, {1, 0, 0}, {0, 1, 0}}),
                    PreconditionError);
}

TEST_CASE("collinear triangle is rejected") {
    CHECK_THROWS_AS(build_knot({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}}),
                    PreconditionError);
}

TEST_CASE("subset classification matches the run structure") {
    CHECK(classify_subset(8, {0, 1, 2, 3}) == SubsetCase::C1);
    CHECK(classify_subset(8, {7, 0, 1, 3}) == SubsetCase::C2a);  // {7,0,1} + {3}
    CHECK(classify_subset(8, {0, 1, 4, 5}) == SubsetCase::C2b);
    CHECK(classify_subset(8, {0, 1, 3, 5}) == SubsetCase::C3);
    CHECK(classify_subset(8, {0, 2, 4, 6}) == SubsetCase::C4);
    CHECK(classify_subset(4, {0, 1, 2, 3}) == SubsetCase::C1);  // full cycle
    CHECK(classify_subset(5, {0, 1, 3, 4}) == SubsetCase::C1);  // wraps at 4-0
    CHECK(classify_subset(7, {0, 2, 3, 5}) == SubsetCase::C3);
}

TEST_CASE("subset classification rejects bad input") {
    CHECK_THROWS_AS(classify_subset(8, {0, 1, 2, 2}), PreconditionError);
    CHECK_THROWS_AS(classify_subset(8, {0, 1, 2, 8}), PreconditionError);
    CHECK_THROWS_AS(classify_subset(8, {-1, 1, 2, 3}), PreconditionError);
    CHECK_THROWS_AS(classify_subset(3, {0, 1, 2, 2}), PreconditionError);
}

TEST_CASE("classification is invariant under rotation and reflection") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 6 + static_cast<int>(rng.next() % 10);
        std::array<int, 4> subset;
        // four distinct indices
        for (int i = 0; i < 4; ++i) {
            for (;;) {
                const int c = static_cast<int>(rng.next() % static_cast<unsigned>(n));
                if (std::find(subset.begin(), subset.begin() + i, c) ==
                    subset.begin() + i) {
                    subset[static_cast<size_t>(i)] = c;
                    break;
                }
            }
        }
        const SubsetCase base = classify_subset(n, subset);
        const int shift = static_cast<int>(rng.next() % static_cast<unsigned>(n));
        std::array<int, 4> rotated, reflected;
        for (int i = 0; i < 4; ++i) {
            rotated[static_cast<size_t>(i)] =
                (subset[static_cast<size_t>(i)] + shift) % n;
            reflected[static_cast<size_t>(i)] =
                ((-subset[static_cast<size_t>(i)]) % n + n) % n;
        }
        CHECK(classify_subset(n, rotated) == base);
        CHECK(classify_subset(n, reflected) == base);
    }
}

TEST_CASE("case maxima follow the component structure") {
    CHECK(case_max_quadrisecants(SubsetCase::C1) == 0);
    CHECK(case_max_quadrisecants(SubsetCase::C2a) == 0);
    CHECK(case_max_quadrisecants(SubsetCase::C2b) == 1);
    CHECK(case_max_quadrisecants(SubsetCase::C3) == 1);
    CHECK(case_max_quadrisecants(SubsetCase::C4) == 2);
}

TEST_CASE("tetrahedron passes general position") {
    const PolygonalKnot k =
        build_knot({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    const GeneralPositionReport gp = check_general_position(k);
    CHECK(gp.pass);
    CHECK(gp.min_margin_coplanar > 0.0);
    CHECK(std::isfinite(gp.min_margin_coplanar));
    // n = 4 has no pairwise-skew edge triple
    CHECK(std::isinf(gp.min_margin_quadric));
}

TEST_CASE("triangle passes vacuously") {
    const PolygonalKnot k = build_knot({{0, 0, 0}, {1, 0, 0}, {0, 1, 0.5}});
    const GeneralPositionReport gp = check_general_position(k);
    CHECK(gp.pass);
    CHECK(std::isinf(gp.min_margin_coplanar));
    CHECK(std::isinf(gp.min_margin_quadric));
}

TEST_CASE("edges on a common quadric violate condition (b)") {
    const PolygonalKnot k = ruled_hexagon();
    const GeneralPositionReport gp = check_general_position(k);
    CHECK_FALSE(gp.pass);
    bool edge1 = false, edge3 = false;
    for (const auto& v : gp.quadric_violations) {
        if (v.triple == std::array<int, 3>{0, 2, 4} && v.edge == 1) edge1 = true;
        if (v.triple == std::array<int, 3>{0, 2, 4} && v.edge == 3) edge3 = true;
    }
    CHECK(edge1);
    CHECK(edge3);
}

TEST_CASE("general position is invariant under similarity transforms") {
    SplitMix64 rng(1212);
    const PolygonalKnot pass_knot = standard_knot(KnotKind::HexTrefoil);
    const PolygonalKnot fail_knot = ruled_hexagon();
    for (int i = 0; i < 8; ++i) {
        qtest::Similarity sim = qtest::random_isometry(rng);
        sim.scale = 0.25 + 4.0 * rng.next_double();

        const GeneralPositionReport a =
            check_general_position(build_knot(sim.apply(pass_knot.vertices())));
        CHECK(a.pass);

        const GeneralPositionReport b =
            check_general_position(build_knot(sim.apply(fail_knot.vertices())));
        const GeneralPositionReport base = check_general_position(fail_knot);
        CHECK_FALSE(b.pass);
        REQUIRE(b.quadric_violations.size() == base.quadric_violations.size());
        for (size_t v = 0; v < b.quadric_violations.size(); ++v) {
            CHECK(b.quadric_violations[v].triple == base.quadric_violations[v].triple);
            CHECK(b.quadric_violations[v].edge == base.quadric_violations[v].edge);
        }
    }
}

TEST_CASE("a passing knot has all non-adjacent edge pairs skew") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const PolygonalKnot k = random_gp_knot(8, seed);
        const int n = k.edge_count();
        for (int i = 0; i < n; ++i) {
            for (int j = i + 2; j < n; ++j) {
                if (i == 0 && j == n - 1) continue;
                const Segment3& a = k.edge(i);
                const Segment3& b = k.edge(j);
                CHECK_FALSE(coplanar_points(a.a, a.b, b.a, b.b, Tolerance{}));
            }
        }
    }
}
