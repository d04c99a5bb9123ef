#include "quadrisect/geom.hpp"

namespace quadrisect {

namespace {

// Threshold below which a unit-vector component is treated as zero when
// fixing the canonical sign. Keeps the sign choice stable when a component
// is pure rounding noise.
constexpr double kSignThreshold = 1e-9;

void canonicalize(Vec3& d, Vec3& m) {
    const double n = d.norm();
    d = d / n;
    m = m / n;
    const double comps[3] = {d.x, d.y, d.z};
    for (double c : comps) {
        if (std::abs(c) > kSignThreshold) {
            if (c < 0) {
                d = -d;
                m = -m;
            }
            break;
        }
    }
}

} // namespace

double orient3d(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
    const Vec3 u = b - a;
    const Vec3 v = c - a;
    const Vec3 w = d - a;
    return u.dot(v.cross(w));
}

double orient3d_normalized(const Point3& a, const Point3& b, const Point3& c,
                           const Point3& d) {
    const double scale = (b - a).norm() * (c - a).norm() * (d - a).norm();
    if (scale == 0.0) return 0.0;
    return orient3d(a, b, c, d) / scale;
}

bool coplanar_points(const Point3& a, const Point3& b, const Point3& c,
                     const Point3& d, const Tolerance& tol) {
    return std::abs(orient3d_normalized(a, b, c, d)) <= tol.eps_coplanar;
}

PluckerLine plucker_from_points(const Point3& p, const Point3& q) {
    const Vec3 diff = q - p;
    const double len = diff.norm();
    const double scale = std::max(p.norm(), q.norm());
    if (len == 0.0 || len <= 1e-14 * scale) {
        throw PreconditionError("plucker_from_points: coincident points");
    }
    PluckerLine l;
    l.d = diff;
    l.m = p.cross(diff);
    canonicalize(l.d, l.m);
    return l;
}

PluckerLine plucker_from_segment(const Segment3& s) {
    return plucker_from_points(s.a, s.b);
}

double side_product(const PluckerLine& l1, const PluckerLine& l2) {
    return l1.d.dot(l2.m) + l2.d.dot(l1.m);
}

double line_line_distance(const PluckerLine& l1, const PluckerLine& l2) {
    const double sine = l1.d.cross(l2.d).norm();
    if (sine < 1e-12) {
        // parallel: distance from a point of l2 to l1
        return line_point_distance(l1, l2.base_point());
    }
    return std::abs(side_product(l1, l2)) / sine;
}

double line_point_distance(const PluckerLine& l, const Point3& p) {
    return (p.cross(l.d) - l.m).norm();
}

bool lines_equal(const PluckerLine& l1, const PluckerLine& l2, double eps) {
    const double mscale = 1.0 + std::max(l1.m.norm(), l2.m.norm());
    return (l1.d - l2.d).norm() <= eps && (l1.m - l2.m).norm() <= eps * mscale;
}

SegmentHit line_hits_segment(const PluckerLine& l, const Segment3& s,
                             const Tolerance& tol) {
    SegmentHit result;
    const Vec3 e = s.direction();
    const double elen = e.norm();
    const double scale = s.coordinate_scale();

    const Vec3 cr = l.d.cross(e);
    const double sine = cr.norm();
    if (sine <= 1e-12 * elen) {
        // parallel carrier lines
        if (line_point_distance(l, s.a) <= tol.eps_incidence * scale) {
            result.kind = SegmentHit::Kind::CollinearOverlap;
        }
        return result;
    }

    // coplanarity: |side product| / |d x e| is the distance between the lines
    const double side = l.d.dot(s.a.cross(e)) + e.dot(l.m);
    if (std::abs(side) / sine > tol.eps_incidence * scale) {
        return result;  // skew
    }

    // solve a + t e on l in least squares:  (a + t e) x d = m
    const Vec3 exd = e.cross(l.d);
    const double t = exd.dot(l.m - s.a.cross(l.d)) / exd.squared_norm();
    if (t < -tol.eps_param || t > 1.0 + tol.eps_param) {
        return result;
    }
    const Point3 point = s.at(t);
    if (line_point_distance(l, point) > tol.eps_incidence * scale) {
        return result;
    }

    result.kind = SegmentHit::Kind::Single;
    result.hit.point = point;
    result.hit.seg_param = t;
    result.hit.line_param = (point - l.base_point()).dot(l.d);
    result.hit.vertex_hit =
        std::abs(t) <= tol.eps_param || std::abs(t - 1.0) <= tol.eps_param;
    return result;
}

std::optional<PluckerLine> transversal_through_point(const Point3& p,
                                                     const PluckerLine& l1,
                                                     const PluckerLine& l2,
                                                     const Tolerance& tol) {
    const double scale =
        1.0 + std::max({p.norm(), l1.m.norm(), l2.m.norm()});
    const double d1 = line_point_distance(l1, p);
    const double d2 = line_point_distance(l2, p);
    if (d1 <= tol.eps_incidence * scale || d2 <= tol.eps_incidence * scale) {
        throw PreconditionError("transversal_through_point: point lies on a line");
    }

    // Both planes contain p, so their intersection line passes through p.
    // Normals from the perpendicular feet keep the construction conditioned.
    const auto plane_normal = [&p](const PluckerLine& l) {
        const Point3 foot =
            l.base_point() + l.d * (p - l.base_point()).dot(l.d);
        return l.d.cross(foot - p).normalized();
    };
    const Vec3 n1 = plane_normal(l1);
    const Vec3 n2 = plane_normal(l2);

    Vec3 dir = n1.cross(n2);
    const double dn = dir.norm();
    if (dn <= 1e-12) {
        throw DegenerateError(
            "transversal_through_point: coincident planes (lines not skew)");
    }
    dir = dir / dn;

    // A transversal parallel to a generator meets it only at infinity.
    if (dir.cross(l1.d).norm() <= tol.eps_incidence ||
        dir.cross(l2.d).norm() <= tol.eps_incidence) {
        return std::nullopt;
    }

    return plucker_from_points(p, p + dir);
}

} // namespace quadrisect
