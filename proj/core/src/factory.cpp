#include "quadrisect/factory.hpp"

#include <cmath>

#include "quadrisect/errors.hpp"

namespace quadrisect {

const char* to_string(KnotKind kind) {
    switch (kind) {
        case KnotKind::RegularUnknot: return "regular-unknot";
        case KnotKind::HexTrefoil: return "hex-trefoil";
        case KnotKind::HeptFig8: return "hept-fig8";
        case KnotKind::Random: return "random";
    }
    return "?";
}

KnotKind knot_kind_from_string(const std::string& name) {
    if (name == "regular-unknot") return KnotKind::RegularUnknot;
    if (name == "hex-trefoil") return KnotKind::HexTrefoil;
    if (name == "hept-fig8") return KnotKind::HeptFig8;
    if (name == "random") return KnotKind::Random;
    throw ParseError("unknown knot kind: " + name);
}

PolygonalKnot regular_unknot(int n, double radius, double perturbation,
                             std::uint64_t seed, const Tolerance& tol) {
    if (n < 3) {
        throw PreconditionError("regular_unknot: need n >= 3");
    }
    if (radius <= 0.0) {
        throw PreconditionError("regular_unknot: radius must be positive");
    }
    if (perturbation < 0.0) {
        throw PreconditionError("regular_unknot: negative perturbation");
    }

    const auto build = [&](std::uint64_t attempt) {
        SplitMix64 rng = SplitMix64::substream(seed, attempt);
        std::vector<Point3> verts;
        verts.reserve(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double theta = 2.0 * M_PI * i / n;
            Point3 v{radius * std::cos(theta), radius * std::sin(theta), 0.0};
            if (perturbation > 0.0) {
                v.x += perturbation * rng.next_symmetric();
                v.y += perturbation * rng.next_symmetric();
                v.z += perturbation * rng.next_symmetric();
            }
            verts.push_back(v);
        }
        return build_knot(std::move(verts), tol);
    };

    if (perturbation == 0.0) {
        // flat polygon; for n >= 4 it fails general position, which callers
        // may want on purpose
        return build(0);
    }
    for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
        PolygonalKnot knot;
        try {
            knot = build(attempt);
        } catch (const PreconditionError&) {
            continue;  // perturbation produced a self-intersection; retry
        }
        if (check_general_position(knot, tol).pass) {
            return knot;
        }
    }
    throw GenerationError("regular_unknot: no general-position knot in 100 attempts");
}

PolygonalKnot standard_knot(KnotKind kind) {
    if (kind == KnotKind::HexTrefoil) {
        // Six sticks on a sampled (2,3) torus curve; exactly three generic
        // quadrisecants, one per opposite-pair subset.
        const double r3 = std::sqrt(3.0);
        return build_knot({
            {0.5 + r3, 0.5 * r3 - 1.0, -1.0},
            {1.0, 2.0, 1.0},
            {0.5 - r3, -0.5 * r3 - 1.0, -1.0},
            {-0.5 + r3, -0.5 * r3 - 1.0, 1.0},
            {-1.0, 2.0, -1.0},
            {-0.5 - r3, 0.5 * r3 - 1.0, 1.0},
        });
    }
    if (kind == KnotKind::HeptFig8) {
        // Seven sticks; this realization achieves six generic quadrisecants.
        return build_knot({
            {0.258, -0.737, 0.512},
            {-0.411, 0.965, -0.366},
            {0.543, 0.284, 0.707},
            {-0.197, -0.834, 0.087},
            {-0.254, 0.406, 0.815},
            {0.508, -0.114, -0.364},
            {-0.580, -0.741, 0.977},
        });
    }
    throw PreconditionError("standard_knot: not a standard kind");
}

PolygonalKnot random_gp_knot(int n, std::uint64_t seed, const Tolerance& tol) {
    if (n < 3) {
        throw PreconditionError("random_gp_knot: need n >= 3");
    }
    constexpr std::uint64_t kBudget = 10000;
    constexpr double kMarginFloor = 1e-7;

    for (std::uint64_t attempt = 0; attempt < kBudget; ++attempt) {
        SplitMix64 rng = SplitMix64::substream(seed, attempt);
        std::vector<Point3> verts;
        verts.reserve(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            // uniform in the unit ball by rejection from the cube
            for (;;) {
                const Point3 v{rng.next_symmetric(), rng.next_symmetric(),
                               rng.next_symmetric()};
                if (v.squared_norm() <= 1.0) {
                    verts.push_back(v);
                    break;
                }
            }
        }
        PolygonalKnot knot;
        try {
            knot = build_knot(std::move(verts), tol);
        } catch (const PreconditionError&) {
            continue;
        }
        const GeneralPositionReport gp = check_general_position(knot, tol);
        if (gp.pass && gp.min_margin_coplanar >= kMarginFloor &&
            gp.min_margin_quadric >= kMarginFloor) {
            return knot;
        }
    }
    throw GenerationError("random_gp_knot: rejection budget exhausted");
}

PolygonalKnot make_knot(const KnotSpec& spec, const Tolerance& tol) {
    switch (spec.kind) {
        case KnotKind::RegularUnknot:
            return regular_unknot(spec.n, spec.radius, spec.perturbation,
                                  spec.seed, tol);
        case KnotKind::HexTrefoil:
        case KnotKind::HeptFig8:
            return standard_knot(spec.kind);
        case KnotKind::Random:
            return random_gp_knot(spec.n, spec.seed, tol);
    }
    throw PreconditionError("make_knot: unknown kind");
}

} // namespace quadrisect
