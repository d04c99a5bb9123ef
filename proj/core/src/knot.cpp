#include "quadrisect/knot.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "quadrisect/quadric.hpp"

namespace quadrisect {

namespace {

// Closest-distance between two segments (Ericson, Real-Time Collision
// Detection, 5.1.9).
double segment_segment_distance(const Segment3& s1, const Segment3& s2) {
    const Vec3 d1 = s1.direction();
    const Vec3 d2 = s2.direction();
    const Vec3 r = s1.a - s2.a;
    const double a = d1.squared_norm();
    const double e = d2.squared_norm();
    const double f = d2.dot(r);
    const double c = d1.dot(r);
    const double b = d1.dot(d2);
    const double denom = a * e - b * b;

    double s = 0.0;
    if (denom > 0.0) {
        s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
    }
    double t = (b * s + f) / e;
    if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
    } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
    }
    return (s1.at(s) - s2.at(t)).norm();
}

} // namespace

PolygonalKnot build_knot(std::vector<Point3> vertices, const Tolerance& tol) {
    const int n = static_cast<int>(vertices.size());
    if (n < 3) {
        throw PreconditionError("build_knot: need at least 3 vertices");
    }
    for (const Point3& v : vertices) {
        if (!v.finite()) {
            throw PreconditionError("build_knot: non-finite vertex coordinate");
        }
    }

    Point3 lo = vertices[0], hi = vertices[0];
    for (const Point3& v : vertices) {
        lo = {std::min(lo.x, v.x), std::min(lo.y, v.y), std::min(lo.z, v.z)};
        hi = {std::max(hi.x, v.x), std::max(hi.y, v.y), std::max(hi.z, v.z)};
    }
    const double diameter = (hi - lo).norm();
    if (diameter <= 0.0) {
        throw PreconditionError("build_knot: all vertices coincide");
    }

    for (int i = 0; i < n; ++i) {
        const Point3& v = vertices[static_cast<size_t>(i)];
        const Point3& w = vertices[static_cast<size_t>((i + 1) % n)];
        if ((w - v).norm() <= tol.eps_incidence * diameter) {
            throw PreconditionError("build_knot: repeated consecutive vertex " +
                                    std::to_string(i));
        }
    }

    std::vector<Segment3> edges;
    edges.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        edges.push_back(Segment3{vertices[static_cast<size_t>(i)],
                                 vertices[static_cast<size_t>((i + 1) % n)]});
    }

    // Embeddedness: non-adjacent edges keep their distance; adjacent edges
    // must not fold back onto each other through the shared vertex.
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const bool adjacent = (j - i == 1) || (i == 0 && j == n - 1);
            if (adjacent) {
                const int shared = (j - i == 1) ? j : 0;
                const Point3& pivot = vertices[static_cast<size_t>(shared)];
                const Segment3& ei = edges[static_cast<size_t>(i)];
                const Segment3& ej = edges[static_cast<size_t>(j)];
                const Vec3 u = (ei.a == pivot ? ei.b : ei.a) - pivot;
                const Vec3 w = (ej.a == pivot ? ej.b : ej.a) - pivot;
                const double sine = u.cross(w).norm();
                if (sine <= tol.eps_incidence * u.norm() * w.norm() &&
                    u.dot(w) > 0.0) {
                    throw PreconditionError(
                        "build_knot: adjacent edges overlap at vertex " +
                        std::to_string(shared));
                }
            } else {
                if (segment_segment_distance(edges[static_cast<size_t>(i)],
                                             edges[static_cast<size_t>(j)]) <=
                    tol.eps_incidence * diameter) {
                    throw PreconditionError("build_knot: edges " + std::to_string(i) +
                                            " and " + std::to_string(j) +
                                            " intersect");
                }
            }
        }
    }

    PolygonalKnot knot;
    knot.vertices_ = std::move(vertices);
    knot.edges_ = std::move(edges);
    knot.diameter_ = diameter;
    return knot;
}

int component_count(SubsetCase c) {
    switch (c) {
        case SubsetCase::C1: return 1;
        case SubsetCase::C2a:
        case SubsetCase::C2b: return 2;
        case SubsetCase::C3: return 3;
        case SubsetCase::C4: return 4;
    }
    return 0;
}

const char* to_string(SubsetCase c) {
    switch (c) {
        case SubsetCase::C1: return "1";
        case SubsetCase::C2a: return "2a";
        case SubsetCase::C2b: return "2b";
        case SubsetCase::C3: return "3";
        case SubsetCase::C4: return "4";
    }
    return "?";
}

int case_max_quadrisecants(SubsetCase c) {
    switch (c) {
        case SubsetCase::C1:
        case SubsetCase::C2a: return 0;
        case SubsetCase::C2b:
        case SubsetCase::C3: return 1;
        case SubsetCase::C4: return 2;
    }
    return 0;
}

SubsetCase classify_subset(int n, const std::array<int, 4>& subset) {
    if (n < 4) {
        throw PreconditionError("classify_subset: need n >= 4");
    }
    std::set<int> members;
    for (int idx : subset) {
        if (idx < 0 || idx >= n) {
            throw PreconditionError("classify_subset: index out of range");
        }
        if (!members.insert(idx).second) {
            throw PreconditionError("classify_subset: duplicate index");
        }
    }

    // Runs of cyclically consecutive indices; an index starts a run when its
    // predecessor mod n is absent.
    std::vector<int> run_lengths;
    for (int idx : members) {
        if (members.count(((idx - 1) % n + n) % n)) continue;
        int len = 1;
        while (members.count((idx + len) % n)) ++len;
        run_lengths.push_back(len);
    }
    if (run_lengths.empty()) {
        return SubsetCase::C1;  // the subset wraps the whole cycle (n == 4)
    }
    switch (run_lengths.size()) {
        case 1: return SubsetCase::C1;
        case 2:
            return (run_lengths[0] == 2) ? SubsetCase::C2b : SubsetCase::C2a;
        case 3: return SubsetCase::C3;
        default: return SubsetCase::C4;
    }
}

GeneralPositionReport check_general_position(const PolygonalKnot& knot,
                                             const Tolerance& tol) {
    const int n = knot.edge_count();
    const auto& verts = knot.vertices();
    GeneralPositionReport report;
    report.min_margin_coplanar = std::numeric_limits<double>::infinity();
    report.min_margin_quadric = std::numeric_limits<double>::infinity();

    // (a) no four vertices coplanar
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            for (int c = b + 1; c < n; ++c) {
                for (int d = c + 1; d < n; ++d) {
                    const double margin = std::abs(orient3d_normalized(
                        verts[static_cast<size_t>(a)], verts[static_cast<size_t>(b)],
                        verts[static_cast<size_t>(c)], verts[static_cast<size_t>(d)]));
                    report.min_margin_coplanar =
                        std::min(report.min_margin_coplanar, margin);
                    if (margin <= tol.eps_coplanar) {
                        report.coplanar_violations.push_back({a, b, c, d});
                    }
                }
            }
        }
    }

    // (b) no edge contained in the quadric of a pairwise-skew edge triple
    const auto skew = [&](int i, int j) {
        const int gap = std::abs(i - j);
        if (gap == 1 || gap == n - 1) return false;  // adjacent: coplanar
        const Segment3& ei = knot.edge(i);
        const Segment3& ej = knot.edge(j);
        return !coplanar_points(ei.a, ei.b, ej.a, ej.b, tol);
    };
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (!skew(i, j)) continue;
            for (int k = j + 1; k < n; ++k) {
                if (!skew(i, k) || !skew(j, k)) continue;
                Quadric q;
                try {
                    q = quadric_through_three_skew_lines(knot.edge(i), knot.edge(j),
                                                         knot.edge(k), tol);
                } catch (const DegenerateError&) {
                    report.quadric_violations.push_back({{i, j, k}, -1});
                    report.min_margin_quadric = 0.0;
                    continue;
                }
                for (int l = 0; l < n; ++l) {
                    if (l == i || l == j || l == k) continue;
                    const QuadraticCoeffs coeffs =
                        restrict_quadric_to_segment(q, knot.edge(l));
                    const double rel =
                        std::max({std::abs(coeffs.a), std::abs(coeffs.b),
                                  std::abs(coeffs.c)}) /
                        coeffs.scale;
                    report.min_margin_quadric =
                        std::min(report.min_margin_quadric, rel);
                    if (rel <= tol.eps_incidence) {
                        report.quadric_violations.push_back({{i, j, k}, l});
                    }
                }
            }
        }
    }

    report.pass = report.coplanar_violations.empty() &&
                  report.quadric_violations.empty();
    return report;
}

} // namespace quadrisect
