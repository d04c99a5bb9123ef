#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "quadrisect/enumerate.hpp"
#include "quadrisect/io.hpp"
#include "support.hpp"

using namespace quadrisect;

namespace {

std::vector<PluckerLine> report_lines(const QuadrisecantReport& r) {
    std::vector<PluckerLine> out;
    for (const Quadrisecant& q : r.quadrisecants) out.push_back(q.line);
    return out;
}

} // namespace

TEST_CASE("hexagonal trefoil has exactly three quadrisecants") {
    const PolygonalKnot k = standard_knot(KnotKind::HexTrefoil);
    const QuadrisecantReport r = enumerate_quadrisecants(k);
    REQUIRE(r.count() == 3);
    CHECK(r.bound == 3);
    CHECK(r.candidates_rejected == 0);
    CHECK(r.warnings.empty());

    // three distinct opposite-pair subsets, one line each
    std::set<std::array<int, 4>> subsets;
    for (const Quadrisecant& q : r.quadrisecants) {
        CHECK(q.subset_case == SubsetCase::C2b);
        subsets.insert(q.subset);
        CHECK(std::is_sorted(q.subset.begin(), q.subset.end()));
        for (size_t i = 0; i < 4; ++i) {
            CHECK(q.hits[i].seg_param > 0.0);
            CHECK(q.hits[i].seg_param < 1.0);
            CHECK_FALSE(q.hits[i].vertex_hit);
        }
    }
    CHECK(subsets.size() == 3);
    CHECK(verify_case_bounds(r).empty());
    CHECK(r.per_case_counts[static_cast<size_t>(SubsetCase::C2b)] == 3);
}

TEST_CASE("knots with five or fewer edges have no quadrisecant") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        CHECK(enumerate_quadrisecants(random_gp_knot(3, seed)).count() == 0);
        CHECK(enumerate_quadrisecants(regular_unknot(4, 1.0, 0.1, seed)).count() == 0);
        CHECK(enumerate_quadrisecants(regular_unknot(5, 1.0, 0.1, seed)).count() == 0);
    }
}

TEST_CASE("pinned figure-eight achieves six quadrisecants") {
    const PolygonalKnot k = standard_knot(KnotKind::HeptFig8);
    const QuadrisecantReport r = enumerate_quadrisecants(k);
    CHECK(r.count() == 6);
    CHECK(r.count() <= 14);
    CHECK(r.bound == 14);
    CHECK(verify_case_bounds(r).empty());
    for (const Quadrisecant& q : r.quadrisecants) {
        CHECK(q.subset_case != SubsetCase::C1);
        CHECK(q.subset_case != SubsetCase::C2a);
    }
}

TEST_CASE("validate mode reproduces the fast report") {
    EnumerationOptions validate;
    validate.validate = true;
    for (const PolygonalKnot& k :
         {standard_knot(KnotKind::HexTrefoil), standard_knot(KnotKind::HeptFig8),
          random_gp_knot(8, 4), random_gp_knot(10, 5)}) {
        const QuadrisecantReport fast = enumerate_quadrisecants(k);
        const QuadrisecantReport checked = enumerate_quadrisecants(k, {}, validate);
        CHECK(write_report_json(fast) == write_report_json(checked));
    }
}

TEST_CASE("reports are independent of the thread count") {
    const PolygonalKnot k = random_gp_knot(10, 21);
    const QuadrisecantReport base = enumerate_quadrisecants(k);
    for (int threads : {2, 3, 8}) {
        EnumerationOptions opts;
        opts.threads = threads;
        const QuadrisecantReport r = enumerate_quadrisecants(k, {}, opts);
        CHECK(write_report_json(base) == write_report_json(r));
    }
}

TEST_CASE("counts survive relabeling and reversal") {
    const PolygonalKnot k = standard_knot(KnotKind::HexTrefoil);
    const QuadrisecantReport base = enumerate_quadrisecants(k);
    const auto base_lines = report_lines(base);

    // cyclic relabeling
    for (int shift : {1, 2, 5}) {
        std::vector<Point3> rotated;
        for (int i = 0; i < 6; ++i) {
            rotated.push_back(k.vertices()[static_cast<size_t>((i + shift) % 6)]);
        }
        const QuadrisecantReport r = enumerate_quadrisecants(build_knot(rotated));
        CHECK(r.count() == base.count());
        CHECK(qtest::same_line_set(report_lines(r), base_lines, 1e-7));
    }

    // orientation reversal
    std::vector<Point3> reversed(k.vertices().rbegin(), k.vertices().rend());
    const QuadrisecantReport r = enumerate_quadrisecants(build_knot(reversed));
    CHECK(r.count() == base.count());
    CHECK(qtest::same_line_set(report_lines(r), base_lines, 1e-7));
}

TEST_CASE("counts survive rigid motion and scaling") {
    SplitMix64 rng(888);
    const PolygonalKnot k = standard_knot(KnotKind::HexTrefoil);
    const QuadrisecantReport base = enumerate_quadrisecants(k);
    for (int i = 0; i < 5; ++i) {
        qtest::Similarity sim = qtest::random_isometry(rng);
        sim.scale = 0.2 + 5.0 * rng.next_double();
        const QuadrisecantReport moved =
            enumerate_quadrisecants(build_knot(sim.apply(k.vertices())));
        REQUIRE(moved.count() == base.count());
        std::vector<PluckerLine> expected;
        for (const PluckerLine& l : report_lines(base)) expected.push_back(sim.apply(l));
        CHECK(qtest::same_line_set(report_lines(moved), expected, 1e-6));
    }
}

TEST_CASE("general-position failure is a refusal, unless bypassed") {
    const PolygonalKnot square =
        build_knot({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}});
    CHECK_THROWS_AS(enumerate_quadrisecants(square), GeneralPositionError);
    try {
        enumerate_quadrisecants(square);
    } catch (const GeneralPositionError& e) {
        CHECK_FALSE(e.report().pass);
        CHECK(e.report().coplanar_violations.size() == 1);
    }

    EnumerationOptions unsafe;
    unsafe.skip_gp_check = true;
    const QuadrisecantReport r = enumerate_quadrisecants(square, {}, unsafe);
    CHECK(r.gp_bypassed);
    REQUIRE_FALSE(r.warnings.empty());
    CHECK(r.warnings[0].find("bypassed") != std::string::npos);
}

TEST_CASE("per-case counts add up to the total") {
    for (std::uint64_t seed : {2ULL, 6ULL, 9ULL}) {
        const QuadrisecantReport r = enumerate_quadrisecants(random_gp_knot(9, seed));
        std::int64_t sum = 0;
        for (std::int64_t c : r.per_case_counts) sum += c;
        CHECK(sum == r.count());
        CHECK(r.count() <= upper_bound(9));
        CHECK(r.per_case_counts[0] == 0);
        CHECK(r.per_case_counts[1] == 0);
    }
}

TEST_CASE("verify_case_bounds flags a fabricated over-count") {
    QuadrisecantReport fake;
    fake.vertices.resize(8);  // n = 8
    Quadrisecant q;
    q.subset = {0, 1, 2, 3};  // consecutive run: no quadrisecant may live here
    q.subset_case = SubsetCase::C1;
    fake.quadrisecants.push_back(q);
    const auto violations = verify_case_bounds(fake);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].subset == std::array<int, 4>{0, 1, 2, 3});
    CHECK(violations[0].found == 1);
    CHECK(violations[0].maximum == 0);

    // a lying case label is recomputed from the subset
    fake.quadrisecants[0].subset_case = SubsetCase::C4;
    CHECK(verify_case_bounds(fake).size() == 1);
}

TEST_CASE("quadrisecant lines hit exactly their four edges") {
    const PolygonalKnot k = standard_knot(KnotKind::HeptFig8);
    const QuadrisecantReport r = enumerate_quadrisecants(k);
    const Tolerance tol;
    for (const Quadrisecant& q : r.quadrisecants) {
        for (int e = 0; e < k.edge_count(); ++e) {
            const SegmentHit sh = line_hits_segment(q.line, k.edge(e), tol);
            const bool member =
                std::find(q.subset.begin(), q.subset.end(), e) != q.subset.end();
            CHECK(sh.is_hit() == member);
        }
    }
}
