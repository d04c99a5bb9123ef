#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "quadrisect/census.hpp"
#include "quadrisect/knot.hpp"
#include "quadrisect/quadric.hpp"

namespace quadrisect {

/// A line meeting the knot in exactly four points, all interior to edges.
struct Quadrisecant {
    PluckerLine line;
    std::array<int, 4> subset;  // the four edges hit, ascending
    std::array<Hit, 4> hits;    // ordered by edge index
    SubsetCase subset_case = SubsetCase::C4;
    std::vector<std::string> warnings;  // near-degeneracy notes
};

struct EnumerationOptions {
    /// Run the solver on subsets the component-count theorems rule out
    /// (C1, C2a) instead of skipping them; on a general-position knot the
    /// report must come out identical.
    bool validate = false;
    /// Enumerate even when the general-position check fails. The report then
    /// carries a caveat and its bound guarantee is void.
    bool skip_gp_check = false;
    /// Subset workloads sharded over this many threads; output is identical
    /// for any value.
    int threads = 1;
};

struct QuadrisecantReport {
    std::string format_version = "1";
    std::string knot_name;  // optional
    std::vector<Point3> vertices;
    Tolerance tolerance;
    GeneralPositionReport general_position;
    bool gp_bypassed = false;

    std::vector<Quadrisecant> quadrisecants;  // lexicographic subset order
    std::array<std::int64_t, 5> per_case_counts{};  // by SubsetCase
    CensusTable census;
    std::int64_t bound = 0;
    std::int64_t candidates_rejected = 0;  // failed the exactly-four filter
    std::vector<std::string> warnings;

    int edge_count() const { return static_cast<int>(vertices.size()); }
    std::int64_t count() const {
        return static_cast<std::int64_t>(quadrisecants.size());
    }
};

/// Enumerate all generic quadrisecants of the knot.
///
/// Every 4-edge subset is classified; subsets with component count 1 or a
/// lone-edge two-component split admit no quadrisecant and are skipped
/// (validate mode runs them anyway). The remaining subsets go through the
/// four-segment transversal solver, and every candidate line is accepted
/// only when it meets exactly the subset's four edges among all n, interiorly
/// and at pairwise-distinct points. Candidates touching a fifth edge or a
/// vertex are counted in candidates_rejected.
///
/// Throws GeneralPositionError when the knot fails the general-position
/// check (unless skip_gp_check), and propagates solver errors with the
/// offending subset named.
QuadrisecantReport enumerate_quadrisecants(const PolygonalKnot& knot,
                                           const Tolerance& tol = {},
                                           const EnumerationOptions& options = {});

struct CaseBoundViolation {
    std::array<int, 4> subset;
    SubsetCase subset_case;
    int found = 0;
    int maximum = 0;
};

/// Check every subset's found-count against its case maximum
/// (0 / 0 / 1 / 1 / 2 for C1 / C2a / C2b / C3 / C4). Labels are recomputed
/// from the subsets, so fabricated reports are caught. Empty for any report
/// produced from a general-position knot.
std::vector<CaseBoundViolation> verify_case_bounds(const QuadrisecantReport& report);

} // namespace quadrisect
