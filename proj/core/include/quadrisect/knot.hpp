#pragma once

#include <array>
#include <string>
#include <vector>

#include "quadrisect/geom.hpp"

namespace quadrisect {

/// Closed embedded polygonal curve: n >= 3 vertices in cyclic order, edge i
/// joining vertex i to vertex (i+1) mod n. Immutable after construction.
class PolygonalKnot {
public:
    int edge_count() const { return static_cast<int>(vertices_.size()); }
    const std::vector<Point3>& vertices() const { return vertices_; }
    const std::vector<Segment3>& edges() const { return edges_; }
    const Segment3& edge(int i) const { return edges_[static_cast<size_t>(i)]; }

    /// Bounding-box diagonal; the knot's characteristic length.
    double diameter() const { return diameter_; }

private:
    friend PolygonalKnot build_knot(std::vector<Point3>, const Tolerance&);
    std::vector<Point3> vertices_;
    std::vector<Segment3> edges_;
    double diameter_ = 0.0;
};

/// Validates and builds a knot: n >= 3, consecutive vertices distinct,
/// non-adjacent edges disjoint, adjacent edges meeting only at the shared
/// vertex. Throws PreconditionError on violations.
PolygonalKnot build_knot(std::vector<Point3> vertices, const Tolerance& tol = {});

/// Component structure of a 4-edge subset: the number of maximal runs of
/// cyclically consecutive indices, with the two-component case split by
/// whether one component is a single edge (C2a) or both are pairs (C2b).
enum class SubsetCase { C1, C2a, C2b, C3, C4 };

int component_count(SubsetCase c);
const char* to_string(SubsetCase c);

/// Classify a subset of 4 distinct edge indices of an n-cycle. Throws
/// PreconditionError on duplicates, out-of-range indices, or n < 4.
SubsetCase classify_subset(int n, const std::array<int, 4>& subset);

/// Per-subset maximum number of generic quadrisecants: 0, 0, 1, 1, 2 for
/// C1, C2a, C2b, C3, C4.
int case_max_quadrisecants(SubsetCase c);

struct GeneralPositionReport {
    struct QuadricViolation {
        std::array<int, 3> triple;  // pairwise-skew edge triple
        int edge;                   // contained edge; -1 when the quadric
                                    // construction itself was degenerate
    };

    bool pass = false;
    std::vector<std::array<int, 4>> coplanar_violations;  // 4-vertex tuples
    std::vector<QuadricViolation> quadric_violations;
    /// Smallest normalized |orient3d| over all 4-vertex subsets
    /// (infinity when n < 4).
    double min_margin_coplanar = 0.0;
    /// Smallest normalized restriction magnitude over all (skew triple,
    /// other edge) pairs (infinity when no skew triple exists).
    double min_margin_quadric = 0.0;
};

/// Both general-position conditions: (a) every 4 vertices affinely
/// independent, (b) no edge contained in the quadric generated by any
/// pairwise-skew edge triple. Never throws; failures land in the report.
GeneralPositionReport check_general_position(const PolygonalKnot& knot,
                                             const Tolerance& tol = {});

/// Thrown when an operation that requires general position receives a knot
/// failing it; carries the failing report.
class GeneralPositionError : public std::runtime_error {
public:
    GeneralPositionError(const std::string& what, GeneralPositionReport report)
        : std::runtime_error(what), report_(std::move(report)) {}
    const GeneralPositionReport& report() const { return report_; }

private:
    GeneralPositionReport report_;
};

} // namespace quadrisect
