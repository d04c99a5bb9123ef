#include "quadrisect/quadric.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>

namespace quadrisect {

namespace {

// Ratio of the second-smallest to largest singular value below which the
// sample system is treated as rank-deficient (the quadric through the three
// lines is not unique to working precision).
constexpr double kRankThreshold = 1e-7;

// Worst admissible relative residual of the fitted quadric at held-out
// samples of its generator lines.
constexpr double kFitResidualLimit = 1e-8;

Eigen::Matrix<double, 1, 10> monomial_row(const Point3& p) {
    Eigen::Matrix<double, 1, 10> row;
    row << p.x * p.x, p.y * p.y, p.z * p.z, p.x * p.y, p.x * p.z, p.y * p.z,
        p.x, p.y, p.z, 1.0;
    return row;
}

double relative_residual(const Quadric& q, const Point3& p) {
    return std::abs(q.evaluate(p)) / (1.0 + p.squared_norm());
}

} // namespace

Quadric::Quadric(const std::array<double, 16>& coeffs) : q_(coeffs) {}

double Quadric::evaluate(const Point3& p) const {
    const double h[4] = {p.x, p.y, p.z, 1.0};
    double value = 0.0;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            value += h[r] * q_[static_cast<size_t>(r * 4 + c)] * h[c];
        }
    }
    return value;
}

// Fits the quadric through three sample points per segment span (t = 0, 1/2,
// 1). Samples are centered and scaled before building the 9x10 monomial
// system; the nullspace comes from a full SVD.
Quadric fit_quadric_through_lines(const std::array<Segment3, 3>& spans,
                                  const Tolerance& tol) {
    (void)tol;
    std::array<Point3, 9> samples;
    int k = 0;
    for (const Segment3& s : spans) {
        for (double t : {0.0, 0.5, 1.0}) {
            samples[static_cast<size_t>(k++)] = s.at(t);
        }
    }

    Point3 center{0, 0, 0};
    for (const Point3& p : samples) center += p;
    center = center / 9.0;
    double extent = 0.0;
    for (const Point3& p : samples) {
        const Vec3 d = p - center;
        extent = std::max({extent, std::abs(d.x), std::abs(d.y), std::abs(d.z)});
    }
    if (extent <= 0.0) {
        throw DegenerateError("quadric fit: coincident sample points");
    }

    Eigen::MatrixXd system(9, 10);
    for (int i = 0; i < 9; ++i) {
        system.row(i) = monomial_row((samples[static_cast<size_t>(i)] - center) / extent);
    }

    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(system, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(8) < kRankThreshold * sv(0)) {
        throw DegenerateError(
            "quadric fit: sample system rank-deficient (near-degenerate lines)");
    }
    const Eigen::VectorXd v = svd.matrixV().col(9);

    // Coefficient vector -> symmetric matrix in the normalized frame.
    Eigen::Matrix4d qn;
    qn << v(0), v(3) / 2, v(4) / 2, v(6) / 2,
          v(3) / 2, v(1), v(5) / 2, v(7) / 2,
          v(4) / 2, v(5) / 2, v(2), v(8) / 2,
          v(6) / 2, v(7) / 2, v(8) / 2, v(9);

    // Undo the normalization x_n = (x - c) / s.
    Eigen::Matrix4d t_mat = Eigen::Matrix4d::Identity() / extent;
    t_mat(3, 3) = 1.0;
    t_mat(0, 3) = -center.x / extent;
    t_mat(1, 3) = -center.y / extent;
    t_mat(2, 3) = -center.z / extent;
    Eigen::Matrix4d q_world = t_mat.transpose() * qn * t_mat;
    q_world /= q_world.norm();

    // Canonical sign: largest-magnitude entry positive.
    int mr = 0, mc = 0;
    q_world.cwiseAbs().maxCoeff(&mr, &mc);
    if (q_world(mr, mc) < 0) q_world = -q_world;

    Quadric result;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            result.q_[static_cast<size_t>(r * 4 + c)] = q_world(r, c);
        }
    }

    // Held-out check: two fresh samples per generator line.
    double worst = 0.0;
    for (const Segment3& s : spans) {
        for (double t : {0.25, 0.75}) {
            worst = std::max(worst, relative_residual(result, s.at(t)));
        }
    }
    result.fit_residual_ = worst;
    if (worst > kFitResidualLimit) {
        throw DegenerateError("quadric fit: held-out residual too large");
    }
    return result;
}

Quadric quadric_through_three_skew_lines(const Segment3& e1, const Segment3& e2,
                                         const Segment3& e3, const Tolerance& tol) {
    const std::array<Segment3, 3> spans = {e1, e2, e3};
    const std::array<PluckerLine, 3> lines = {
        plucker_from_segment(e1), plucker_from_segment(e2), plucker_from_segment(e3)};
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            const Segment3& si = spans[static_cast<size_t>(i)];
            const Segment3& sj = spans[static_cast<size_t>(j)];
            if (coplanar_points(si.a, si.b, sj.a, sj.b, tol)) {
                throw PreconditionError("quadric: input lines not pairwise skew");
            }
            (void)lines;
        }
    }
    return fit_quadric_through_lines(spans, tol);
}

Quadric quadric_through_three_skew_lines(const PluckerLine& l1,
                                         const PluckerLine& l2,
                                         const PluckerLine& l3,
                                         const Tolerance& tol) {
    const std::array<PluckerLine, 3> lines = {l1, l2, l3};

    // Sample windows centered on the feet of the pairwise common
    // perpendiculars, so the fit is conditioned around the mutual region.
    std::array<Segment3, 3> spans;
    double pitch = 0.0;
    std::array<Point3, 3> anchors;
    for (int i = 0; i < 3; ++i) {
        const PluckerLine& li = lines[static_cast<size_t>(i)];
        double smin = 0.0, smax = 0.0;
        bool first = true;
        for (int j = 0; j < 3; ++j) {
            if (j == i) continue;
            const PluckerLine& lj = lines[static_cast<size_t>(j)];
            // foot on li of the common perpendicular with lj
            const Vec3 w = lj.base_point() - li.base_point();
            const double dd = li.d.dot(lj.d);
            const double denom = 1.0 - dd * dd;
            double s = 0.0;
            if (denom > 1e-12) {
                s = (w.dot(li.d) - dd * w.dot(lj.d)) / denom;
            }
            if (first) {
                smin = smax = s;
                first = false;
            } else {
                smin = std::min(smin, s);
                smax = std::max(smax, s);
            }
        }
        anchors[static_cast<size_t>(i)] = li.at(0.5 * (smin + smax));
        pitch = std::max(pitch, smax - smin);
        spans[static_cast<size_t>(i)] = Segment3{li.at(smin), li.at(smax)};
    }
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            pitch = std::max(pitch, (anchors[static_cast<size_t>(i)] -
                                     anchors[static_cast<size_t>(j)]).norm());
        }
    }
    if (pitch <= 0.0) pitch = 1.0;
    // widen degenerate windows to the configuration scale
    for (int i = 0; i < 3; ++i) {
        Segment3& s = spans[static_cast<size_t>(i)];
        if (s.direction().norm() < 0.1 * pitch) {
            const Point3 mid = anchors[static_cast<size_t>(i)];
            const Vec3 dir = lines[static_cast<size_t>(i)].d;
            s = Segment3{mid - dir * (0.5 * pitch), mid + dir * (0.5 * pitch)};
        }
    }

    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            const Segment3& si = spans[static_cast<size_t>(i)];
            const Segment3& sj = spans[static_cast<size_t>(j)];
            if (coplanar_points(si.a, si.b, sj.a, sj.b, tol)) {
                throw PreconditionError("quadric: input lines not pairwise skew");
            }
        }
    }
    return fit_quadric_through_lines(spans, tol);
}

QuadraticCoeffs restrict_quadric_to_segment(const Quadric& q, const Segment3& s) {
    const Vec3 u = s.direction();
    const double ah[4] = {s.a.x, s.a.y, s.a.z, 1.0};
    const double uh[4] = {u.x, u.y, u.z, 0.0};

    double uu = 0.0, ua = 0.0, aa = 0.0;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            const double qrc = q(r, c);
            uu += uh[r] * qrc * uh[c];
            ua += uh[r] * qrc * ah[c];
            aa += ah[r] * qrc * ah[c];
        }
    }

    QuadraticCoeffs out;
    out.a = uu;
    out.b = 2.0 * ua;
    out.c = aa;
    const double reach = std::max(s.a.norm(), s.b.norm());
    out.scale = (1.0 + reach) * (1.0 + reach);
    return out;
}

RootSet solve_restricted_quadratic(double a, double b, double c,
                                   const Tolerance& tol, double coeff_scale) {
    RootSet out;
    const double eps = tol.eps_incidence * coeff_scale;
    const double biggest = std::max({std::abs(a), std::abs(b), std::abs(c)});
    if (biggest <= eps) {
        out.identically_zero = true;
        return out;
    }

    double roots[2];
    int nroots = 0;
    if (std::abs(a) <= eps) {
        if (std::abs(b) > eps) {
            roots[nroots++] = -c / b;
        }
        // |a|,|b| tiny with |c| large: no roots
    } else {
        const double disc = b * b - 4.0 * a * c;
        const double disc_scale = b * b + std::abs(4.0 * a * c);
        if (disc_scale > 0.0 && std::abs(disc) <= 1e-12 * disc_scale) {
            roots[nroots++] = -b / (2.0 * a);
            out.tangential = true;
        } else if (disc > 0.0) {
            // sign-aware form avoids cancellation in the small root
            const double sq = std::sqrt(disc);
            const double q = -0.5 * (b + std::copysign(sq, b == 0.0 ? 1.0 : b));
            roots[nroots++] = q / a;
            if (q != 0.0) roots[nroots++] = c / q;
        }
    }

    for (int i = 0; i < nroots; ++i) {
        const double t = roots[i];
        if (t > 0.0 && t < 1.0) {
            out.roots[static_cast<size_t>(out.count++)] = t;
        }
    }
    if (out.count == 2 && out.roots[0] > out.roots[1]) {
        std::swap(out.roots[0], out.roots[1]);
    }
    return out;
}

namespace {

// Interior verification of one candidate against all four segments.
std::optional<std::array<Hit, 4>> verify_interior(const PluckerLine& line,
                                                  const std::array<Segment3, 4>& segs,
                                                  const Tolerance& tol) {
    std::array<Hit, 4> hits;
    for (size_t i = 0; i < 4; ++i) {
        const SegmentHit sh = line_hits_segment(line, segs[i], tol);
        if (!sh.is_hit()) return std::nullopt;
        const double t = sh.hit.seg_param;
        if (t <= tol.eps_param || t >= 1.0 - tol.eps_param) return std::nullopt;
        hits[i] = sh.hit;
    }
    // four pairwise-distinct intersection points
    double scale = 0.0;
    for (const Segment3& s : segs) scale = std::max(scale, s.coordinate_scale());
    for (size_t i = 0; i < 4; ++i) {
        for (size_t j = i + 1; j < 4; ++j) {
            if ((hits[i].point - hits[j].point).norm() <= tol.eps_incidence * scale) {
                return std::nullopt;
            }
        }
    }
    return hits;
}

std::vector<TransversalHit> solve_coplanar_branch(const std::array<Segment3, 4>& segs,
                                                  int pi, int pj,
                                                  const Tolerance& tol) {
    const Segment3& si = segs[static_cast<size_t>(pi)];
    const Segment3& sj = segs[static_cast<size_t>(pj)];

    Vec3 normal = si.direction().cross(sj.direction());
    if (normal.norm() <= 1e-12 * si.length() * sj.length()) {
        // parallel segments: span the plane with the connecting vector
        normal = si.direction().cross(sj.a - si.a);
    }
    const double nn = normal.norm();
    if (nn <= 0.0) {
        throw DegenerateError("coplanar branch: pair spans no plane");
    }
    normal = normal / nn;

    // pierce the plane with the carrier lines of the other two segments
    std::array<Point3, 2> pierce;
    int k = 0;
    double scale = 0.0;
    for (const Segment3& s : segs) scale = std::max(scale, s.coordinate_scale());
    for (int idx = 0; idx < 4; ++idx) {
        if (idx == pi || idx == pj) continue;
        const Segment3& s = segs[static_cast<size_t>(idx)];
        const Vec3 e = s.direction();
        const double denom = normal.dot(e);
        const double offset = normal.dot(si.a - s.a);
        if (std::abs(denom) <= 1e-12 * e.norm()) {
            if (std::abs(offset) <= tol.eps_incidence * scale) {
                throw DegenerateError(
                    "coplanar branch: a remaining segment lies in the pair plane");
            }
            return {};  // parallel to the plane: no transversal
        }
        pierce[static_cast<size_t>(k++)] = s.at(offset / denom);
    }

    if ((pierce[0] - pierce[1]).norm() <= tol.eps_incidence * scale) {
        throw DegenerateError("coplanar branch: coincident plane piercings");
    }

    const PluckerLine candidate = plucker_from_points(pierce[0], pierce[1]);
    std::vector<TransversalHit> out;
    if (auto hits = verify_interior(candidate, segs, tol)) {
        TransversalHit th;
        th.line = candidate;
        th.hits = *hits;
        th.source = TransversalHit::Source::CoplanarPair;
        out.push_back(std::move(th));
    }
    return out;
}

std::vector<TransversalHit> solve_skew_branch(const std::array<Segment3, 4>& segs,
                                              const Tolerance& tol) {
    std::array<PluckerLine, 4> lines;
    for (size_t i = 0; i < 4; ++i) lines[i] = plucker_from_segment(segs[i]);

    // Seed the quadric with the best-conditioned triple: the one whose
    // pairwise side products have the largest minimum magnitude.
    int drop = 0;
    double best = -1.0;
    for (int cand = 0; cand < 4; ++cand) {
        double worst = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 4; ++i) {
            if (i == cand) continue;
            for (int j = i + 1; j < 4; ++j) {
                if (j == cand) continue;
                worst = std::min(worst, std::abs(side_product(
                                            lines[static_cast<size_t>(i)],
                                            lines[static_cast<size_t>(j)])));
            }
        }
        if (worst > best) {
            best = worst;
            drop = cand;
        }
    }
    std::array<int, 3> tri;
    int k = 0;
    for (int i = 0; i < 4; ++i) {
        if (i != drop) tri[static_cast<size_t>(k++)] = i;
    }

    const Quadric q = fit_quadric_through_lines(
        {segs[static_cast<size_t>(tri[0])], segs[static_cast<size_t>(tri[1])],
         segs[static_cast<size_t>(tri[2])]},
        tol);
    const Segment3& e4 = segs[static_cast<size_t>(drop)];
    const QuadraticCoeffs coeffs = restrict_quadric_to_segment(q, e4);
    const RootSet roots = solve_restricted_quadratic(coeffs.a, coeffs.b, coeffs.c,
                                                     tol, coeffs.scale);
    if (roots.identically_zero) {
        throw DegenerateError(
            "skew branch: segment lies on the quadric of the other three");
    }

    // Construction pairs of the seed triple, most skew first.
    std::array<std::array<int, 2>, 3> pairs = {{{tri[0], tri[1]},
                                                {tri[0], tri[2]},
                                                {tri[1], tri[2]}}};
    std::sort(pairs.begin(), pairs.end(), [&](const auto& p, const auto& r) {
        const auto sp = [&](const std::array<int, 2>& pr) {
            return std::abs(side_product(lines[static_cast<size_t>(pr[0])],
                                         lines[static_cast<size_t>(pr[1])]));
        };
        return sp(p) > sp(r);
    });

    double scale = 0.0;
    for (const Segment3& s : segs) scale = std::max(scale, s.coordinate_scale());

    std::vector<TransversalHit> out;
    for (int r = 0; r < roots.count; ++r) {
        const Point3 p = e4.at(roots.roots[static_cast<size_t>(r)]);
        std::optional<PluckerLine> candidate;
        for (const auto& pr : pairs) {
            const int other = tri[0] + tri[1] + tri[2] - pr[0] - pr[1];
            std::optional<PluckerLine> c;
            try {
                c = transversal_through_point(p, lines[static_cast<size_t>(pr[0])],
                                              lines[static_cast<size_t>(pr[1])], tol);
            } catch (const PreconditionError&) {
                continue;  // root point grazes a seed line; try another pair
            }
            if (!c) continue;
            if (line_line_distance(*c, lines[static_cast<size_t>(other)]) <=
                1e-6 * scale) {
                candidate = c;
                break;
            }
        }
        if (!candidate) continue;
        if (auto hits = verify_interior(*candidate, segs, tol)) {
            TransversalHit th;
            th.line = *candidate;
            th.hits = *hits;
            th.source = TransversalHit::Source::Skew;
            th.near_degenerate = roots.tangential;
            // distinct lines only; a duplicate means the two roots collapsed
            bool dup = false;
            for (const TransversalHit& prev : out) {
                if (lines_equal(prev.line, th.line, 1e-7)) dup = true;
            }
            if (!dup) out.push_back(std::move(th));
        }
    }
    return out;
}

} // namespace

std::vector<TransversalHit> transversals_of_four_segments(
    const std::array<Segment3, 4>& segments, const Tolerance& tol) {
    for (const Segment3& s : segments) {
        if (s.length() <= 0.0) {
            throw PreconditionError("transversals: zero-length segment");
        }
    }

    // Coplanar pairs, in index order. Pairs not sharing an endpoint have four
    // distinct coplanar points; more than one of those is a general-position
    // violation rather than a solvable configuration.
    int cpi = -1, cpj = -1;
    int detached_coplanar = 0;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            const Segment3& si = segments[static_cast<size_t>(i)];
            const Segment3& sj = segments[static_cast<size_t>(j)];
            if (!coplanar_points(si.a, si.b, sj.a, sj.b, tol)) continue;
            if (cpi < 0) {
                cpi = i;
                cpj = j;
            }
            const double touch = std::min({(si.a - sj.a).norm(), (si.a - sj.b).norm(),
                                           (si.b - sj.a).norm(), (si.b - sj.b).norm()});
            if (touch > tol.eps_incidence * (si.coordinate_scale() +
                                             sj.coordinate_scale())) {
                ++detached_coplanar;
            }
        }
    }
    if (detached_coplanar > 1) {
        throw DegenerateError(
            "transversals: multiple detached coplanar pairs (general-position "
            "violation)");
    }
    if (cpi >= 0) {
        return solve_coplanar_branch(segments, cpi, cpj, tol);
    }
    return solve_skew_branch(segments, tol);
}

} // namespace quadrisect
