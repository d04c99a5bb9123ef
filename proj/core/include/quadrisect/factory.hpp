#pragma once

#include <cstdint>
#include <string>

#include "quadrisect/knot.hpp"

namespace quadrisect {

/// SplitMix64 (Steele, Lea, Flood 2014). Chosen because the algorithm is
/// fully specified by its update constants, so streams are bit-identical
/// across platforms and toolchains. Substreams are derived by re-mixing the
/// seed with a stream index.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [-1, 1).
    double next_symmetric() { return 2.0 * next_double() - 1.0; }

    /// Independent substream for retry attempt / shard `stream`.
    static SplitMix64 substream(std::uint64_t seed, std::uint64_t stream) {
        SplitMix64 mixer(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
        return SplitMix64(mixer.next());
    }

private:
    std::uint64_t state_;
};

/// Name of the generator algorithm, recorded in report headers.
inline constexpr const char* kRngAlgorithm = "splitmix64";

enum class KnotKind { RegularUnknot, HexTrefoil, HeptFig8, Random };

const char* to_string(KnotKind kind);
KnotKind knot_kind_from_string(const std::string& name);  // throws ParseError

/// Deterministic recipe for a factory knot.
struct KnotSpec {
    KnotKind kind = KnotKind::Random;
    int n = 6;
    std::uint64_t seed = 0;
    double perturbation = 0.0;
    double radius = 1.0;

    bool operator==(const KnotSpec&) const = default;
};

/// Regular n-gon in the z = 0 plane, radius `radius`, each vertex displaced
/// by a seeded uniform offset of magnitude <= perturbation per coordinate.
/// With perturbation > 0 the result is retried on fresh substreams (up to
/// 100) until it passes general position; with perturbation == 0 the flat
/// polygon is returned as-is, which for n >= 4 fails general position by
/// construction. Throws GenerationError when the retry budget is exhausted.
PolygonalKnot regular_unknot(int n, double radius, double perturbation,
                             std::uint64_t seed, const Tolerance& tol = {});

/// Version-pinned standard knots: a 6-stick trefoil and a 7-stick
/// figure-eight, both passing general position with margins above 1e-6.
/// Only HexTrefoil and HeptFig8 are valid kinds.
PolygonalKnot standard_knot(KnotKind kind);

/// Vertices sampled uniformly in the unit ball from the seeded stream,
/// rejected until the knot builds and passes general position with both
/// margins >= 1e-7. Identical (n, seed) give bit-identical knots. Throws
/// GenerationError after 10^4 failed attempts.
PolygonalKnot random_gp_knot(int n, std::uint64_t seed, const Tolerance& tol = {});

/// Dispatch on the spec kind.
PolygonalKnot make_knot(const KnotSpec& spec, const Tolerance& tol = {});

} // namespace quadrisect
