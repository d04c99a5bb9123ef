#pragma once

// Shared helpers for the test binaries: seeded random geometry, rigid
// motions, and the dense-sweep transversal oracles used to cross-check the
// solver. The oracles deliberately avoid the quadric-fit / quadratic-formula
// path: they locate transversals by sign-change isolation along the fourth
// segment.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "quadrisect/factory.hpp"
#include "quadrisect/geom.hpp"
#include "quadrisect/knot.hpp"

namespace qtest {

using namespace quadrisect;

// ---------------------------------------------------------------------------
// seeded random geometry
// ---------------------------------------------------------------------------

inline Vec3 random_in_cube(SplitMix64& rng) {
    return {rng.next_symmetric(), rng.next_symmetric(), rng.next_symmetric()};
}

struct Rotation {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    Vec3 apply(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }
};

/// Uniform random rotation from a uniform unit quaternion.
inline Rotation random_rotation(SplitMix64& rng) {
    const double u1 = rng.next_double();
    const double u2 = rng.next_double();
    const double u3 = rng.next_double();
    const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
    const double w = a * std::sin(2 * M_PI * u2);
    const double x = a * std::cos(2 * M_PI * u2);
    const double y = b * std::sin(2 * M_PI * u3);
    const double z = b * std::cos(2 * M_PI * u3);
    Rotation r;
    r.m = {1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w),
           2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w),
           2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)};
    return r;
}

/// Orientation-preserving similarity x -> scale * R x + t.
struct Similarity {
    Rotation rotation;
    Vec3 translation{};
    double scale = 1.0;

    Point3 apply(const Point3& p) const {
        return rotation.apply(p) * scale + translation;
    }
    Segment3 apply(const Segment3& s) const { return {apply(s.a), apply(s.b)}; }
    std::vector<Point3> apply(const std::vector<Point3>& pts) const {
        std::vector<Point3> out;
        out.reserve(pts.size());
        for (const Point3& p : pts) out.push_back(apply(p));
        return out;
    }
    PluckerLine apply(const PluckerLine& l) const {
        const Point3 p0 = apply(l.base_point());
        const Point3 p1 = apply(l.base_point() + l.d);
        return plucker_from_points(p0, p1);
    }
};

inline Similarity random_isometry(SplitMix64& rng, double translation_range = 2.0) {
    Similarity s;
    s.rotation = random_rotation(rng);
    s.translation = random_in_cube(rng) * translation_range;
    return s;
}

/// Unordered comparison of two line sets by canonical keys.
inline bool same_line_set(const std::vector<PluckerLine>& a,
                          const std::vector<PluckerLine>& b, double eps = 1e-6) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const PluckerLine& la : a) {
        bool matched = false;
        for (size_t i = 0; i < b.size(); ++i) {
            if (!used[i] && lines_equal(la, b[i], eps)) {
                used[i] = true;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// dense-sweep transversal oracles
// ---------------------------------------------------------------------------

/// Raw pencil construction: direction of the line through p that meets both
/// carrier lines. No canonicalization, so the result varies continuously
/// with p and sign-change isolation along a segment is meaningful.
inline std::optional<Vec3> pencil_direction(const Point3& p, const PluckerLine& l1,
                                            const PluckerLine& l2) {
    const auto normal = [&p](const PluckerLine& l) {
        const Point3 foot = l.base_point() + l.d * (p - l.base_point()).dot(l.d);
        Vec3 n = l.d.cross(foot - p);
        const double nn = n.norm();
        if (nn < 1e-14) return Vec3{0, 0, 0};
        return n / nn;
    };
    const Vec3 n1 = normal(l1);
    const Vec3 n2 = normal(l2);
    if (n1.norm() == 0.0 || n2.norm() == 0.0) return std::nullopt;
    Vec3 dir = n1.cross(n2);
    const double dn = dir.norm();
    if (dn < 1e-12) return std::nullopt;
    return dir / dn;
}

/// Signed residual whose zeros along segs[3] are the transversal piercings:
/// the side product between the pencil line through p(t) (meeting lines 0
/// and 1) and line 2.
inline std::optional<double> sweep_residual(double t,
                                            const std::array<Segment3, 4>& segs,
                                            const std::array<PluckerLine, 4>& lines) {
    const Point3 p = segs[3].at(t);
    const auto dir = pencil_direction(p, lines[0], lines[1]);
    if (!dir) return std::nullopt;
    const Vec3 moment = p.cross(*dir);
    return dir->dot(lines[2].m) + lines[2].d.dot(moment);
}

struct OracleHit {
    double t = 0.0;  // parameter on segs[3]
    PluckerLine line;
};

/// All transversals of four pairwise-skew segments by dense sweep: sample the
/// residual at `samples` points of segs[3], isolate sign changes, refine by
/// bisection, then keep roots whose pencil line meets all four segments at
/// strictly interior points.
inline std::vector<OracleHit> sweep_skew_oracle(const std::array<Segment3, 4>& segs,
                                                const Tolerance& tol,
                                                int samples = 10000) {
    std::array<PluckerLine, 4> lines;
    for (size_t i = 0; i < 4; ++i) lines[i] = plucker_from_segment(segs[i]);

    std::vector<OracleHit> hits;
    double prev_t = 0.0;
    std::optional<double> prev = sweep_residual(0.0, segs, lines);
    for (int i = 1; i <= samples; ++i) {
        const double t = static_cast<double>(i) / samples;
        const std::optional<double> cur = sweep_residual(t, segs, lines);
        if (prev && cur && *prev != 0.0 && *cur != 0.0 &&
            std::signbit(*prev) != std::signbit(*cur)) {
            double lo = prev_t, hi = t, flo = *prev;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                const std::optional<double> fmid = sweep_residual(mid, segs, lines);
                if (!fmid) break;
                if (*fmid == 0.0 || std::signbit(*fmid) == std::signbit(flo)) {
                    lo = mid;
                    flo = *fmid;
                } else {
                    hi = mid;
                }
            }
            const double root = 0.5 * (lo + hi);
            const Point3 p = segs[3].at(root);
            const auto dir = pencil_direction(p, lines[0], lines[1]);
            if (dir) {
                PluckerLine cand;
                try {
                    cand = plucker_from_points(p, p + *dir);
                } catch (const PreconditionError&) {
                    prev = cur;
                    prev_t = t;
                    continue;
                }
                bool interior = true;
                for (const Segment3& s : segs) {
                    const SegmentHit sh = line_hits_segment(cand, s, tol);
                    if (!sh.is_hit() || sh.hit.seg_param <= tol.eps_param ||
                        sh.hit.seg_param >= 1.0 - tol.eps_param) {
                        interior = false;
                        break;
                    }
                }
                if (interior) hits.push_back({root, cand});
            }
        }
        prev = cur;
        prev_t = t;
    }
    return hits;
}

/// Coplanar-pair oracle: transversals lie in the plane of segs[0] and
/// segs[1]; isolate the sign change of the plane distance along segs[3],
/// then pin the candidate through the piercing point of segs[2].
inline std::vector<OracleHit> sweep_coplanar_oracle(const std::array<Segment3, 4>& segs,
                                                    const Tolerance& tol,
                                                    int samples = 10000) {
    Vec3 n = segs[0].direction().cross(segs[1].direction());
    if (n.norm() < 1e-12) {
        n = segs[0].direction().cross(segs[1].a - segs[0].a);
    }
    n = n / n.norm();
    const auto height = [&](const Point3& p) { return n.dot(p - segs[0].a); };

    std::vector<OracleHit> hits;
    double prev_t = 0.0;
    double prev = height(segs[3].at(0.0));
    for (int i = 1; i <= samples; ++i) {
        const double t = static_cast<double>(i) / samples;
        const double cur = height(segs[3].at(t));
        if (prev != 0.0 && cur != 0.0 && std::signbit(prev) != std::signbit(cur)) {
            double lo = prev_t, hi = t, flo = prev;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fmid = height(segs[3].at(mid));
                if (fmid == 0.0 || std::signbit(fmid) == std::signbit(flo)) {
                    lo = mid;
                    flo = fmid;
                } else {
                    hi = mid;
                }
            }
            const double root = 0.5 * (lo + hi);
            const Point3 p4 = segs[3].at(root);
            // piercing point of segs[2] in the pair plane
            const double denom = n.dot(segs[2].direction());
            if (std::abs(denom) > 1e-12) {
                const double s = -height(segs[2].a) / denom;
                const Point3 p3 = segs[2].at(s);
                if ((p3 - p4).norm() > 1e-12) {
                    const PluckerLine cand = plucker_from_points(p3, p4);
                    bool interior = true;
                    for (const Segment3& seg : segs) {
                        const SegmentHit sh = line_hits_segment(cand, seg, tol);
                        if (!sh.is_hit() || sh.hit.seg_param <= tol.eps_param ||
                            sh.hit.seg_param >= 1.0 - tol.eps_param) {
                            interior = false;
                            break;
                        }
                    }
                    if (interior) hits.push_back({root, cand});
                }
            }
        }
        prev = cur;
        prev_t = t;
    }
    return hits;
}

/// Seeded quadruple of pairwise-skew, well-separated segments in the unit
/// cube. Deterministic for a given seed.
inline std::array<Segment3, 4> random_skew_quadruple(std::uint64_t seed) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        SplitMix64 rng = SplitMix64::substream(seed, attempt);
        std::array<Segment3, 4> segs;
        bool ok = true;
        for (auto& s : segs) {
            s = Segment3{random_in_cube(rng), random_in_cube(rng)};
            if (s.length() < 0.5) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        for (int i = 0; i < 4 && ok; ++i) {
            for (int j = i + 1; j < 4 && ok; ++j) {
                const double margin = std::abs(orient3d_normalized(
                    segs[static_cast<size_t>(i)].a, segs[static_cast<size_t>(i)].b,
                    segs[static_cast<size_t>(j)].a, segs[static_cast<size_t>(j)].b));
                if (margin < 1e-3) ok = false;
            }
        }
        if (ok) return segs;
    }
}

} // namespace qtest
