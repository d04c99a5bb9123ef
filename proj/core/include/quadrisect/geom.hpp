#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "quadrisect/errors.hpp"

namespace quadrisect {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double squared_norm() const { return dot(*this); }
    double norm() const { return std::sqrt(squared_norm()); }
    Vec3 normalized() const { return *this / norm(); }

    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline double dot(const Vec3& a, const Vec3& b) { return a.dot(b); }
inline Vec3 cross(const Vec3& a, const Vec3& b) { return a.cross(b); }

using Point3 = Vec3;

/// Closed segment from a to b; a != b.
struct Segment3 {
    Point3 a;
    Point3 b;

    Vec3 direction() const { return b - a; }
    double length() const { return direction().norm(); }
    Point3 at(double t) const { return a + direction() * t; }
    Point3 midpoint() const { return at(0.5); }

    /// Length plus endpoint magnitude; the natural scale for relative
    /// tolerances in predicates involving this segment.
    double coordinate_scale() const {
        return length() + std::max(a.norm(), b.norm());
    }
};

/// Relative tolerances used by every geometric predicate. All decisions
/// compare residuals against eps * (operand scale), so geometry of any
/// diameter behaves the same.
struct Tolerance {
    double eps_coplanar = 1e-9;
    double eps_incidence = 1e-8;
    double eps_param = 1e-9;
};

/// Unoriented line in Plucker coordinates: unit direction d with canonical
/// sign (first component of magnitude > 1e-9 is positive) and moment
/// m = p x d for any point p on the line. d.m == 0 up to rounding. The
/// canonical form makes equal lines compare equal, which the deduplication
/// keys rely on.
struct PluckerLine {
    Vec3 d;
    Vec3 m;

    /// Point on the line nearest the origin.
    Point3 base_point() const { return cross(d, m); }
    Point3 at(double s) const { return base_point() + d * s; }
};

/// Signed volume det[b-a, c-a, d-a]; zero iff the four points are coplanar.
double orient3d(const Point3& a, const Point3& b, const Point3& c, const Point3& d);

/// orient3d divided by the product of the three difference-vector norms;
/// dimensionless, comparable across configurations of any size. Zero when a
/// difference vector vanishes.
double orient3d_normalized(const Point3& a, const Point3& b, const Point3& c,
                           const Point3& d);

bool coplanar_points(const Point3& a, const Point3& b, const Point3& c,
                     const Point3& d, const Tolerance& tol);

/// Line through two distinct points. Throws PreconditionError when p == q
/// within floating-point resolution.
PluckerLine plucker_from_points(const Point3& p, const Point3& q);
PluckerLine plucker_from_segment(const Segment3& s);

/// Reciprocal product d1.m2 + d2.m1; zero iff the lines are coplanar.
double side_product(const PluckerLine& l1, const PluckerLine& l2);

/// Distance between the two lines (0 when they meet).
double line_line_distance(const PluckerLine& l1, const PluckerLine& l2);

/// Distance from p to the line.
double line_point_distance(const PluckerLine& l, const Point3& p);

/// Canonical-form comparison of unoriented lines: directions within eps and
/// moments within eps * (1 + moment magnitude).
bool lines_equal(const PluckerLine& l1, const PluckerLine& l2, double eps);

/// Intersection record of a line with a segment.
struct Hit {
    Point3 point;
    double seg_param = 0.0;   // 0 at s.a, 1 at s.b
    double line_param = 0.0;  // along the line from its base point
    bool vertex_hit = false;  // seg_param within eps_param of 0 or 1
};

struct SegmentHit {
    enum class Kind { Miss, Single, CollinearOverlap };
    Kind kind = Kind::Miss;
    Hit hit{};

    bool is_hit() const { return kind == Kind::Single; }
    bool is_collinear() const { return kind == Kind::CollinearOverlap; }
};

/// Intersect a line with a segment. Single when the line meets the segment's
/// carrier line within eps_incidence at parameter t in [0,1] (up to
/// eps_param, with the vertex flag raised near 0 or 1). CollinearOverlap when
/// the line coincides with the carrier line; callers treat that as a
/// genericity violation.
SegmentHit line_hits_segment(const PluckerLine& l, const Segment3& s,
                             const Tolerance& tol);

/// The unique line through p meeting skew lines l1 and l2, when it exists at
/// a finite point of both. Returns nothing when the plane pencil through p is
/// parallel to either line (the transversal escapes to infinity). Throws
/// PreconditionError when p lies on l1 or l2, DegenerateError when the two
/// planes coincide (l1, l2 not skew).
std::optional<PluckerLine> transversal_through_point(const Point3& p,
                                                     const PluckerLine& l1,
                                                     const PluckerLine& l2,
                                                     const Tolerance& tol);

} // namespace quadrisect
