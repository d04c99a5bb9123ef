#include "quadrisect/enumerate.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <thread>

namespace quadrisect {

namespace {

std::vector<std::array<int, 4>> all_subsets(int n) {
    std::vector<std::array<int, 4>> subsets;
    if (n < 4) return subsets;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            for (int c = b + 1; c < n; ++c) {
                for (int d = c + 1; d < n; ++d) {
                    subsets.push_back({a, b, c, d});
                }
            }
        }
    }
    return subsets;
}

std::string subset_string(const std::array<int, 4>& s) {
    return "{" + std::to_string(s[0]) + "," + std::to_string(s[1]) + "," +
           std::to_string(s[2]) + "," + std::to_string(s[3]) + "}";
}

struct ShardResult {
    std::vector<Quadrisecant> found;
    std::int64_t rejected = 0;
    std::vector<std::string> warnings;
};

// Candidate acceptance: the line must meet exactly the subset's four edges
// among all n, interiorly, away from every vertex.
bool passes_exactly_four(const PluckerLine& line, const PolygonalKnot& knot,
                         const std::array<int, 4>& subset, const Tolerance& tol,
                         std::array<Hit, 4>& hits_out) {
    int matched = 0;
    for (int l = 0; l < knot.edge_count(); ++l) {
        const SegmentHit sh = line_hits_segment(line, knot.edge(l), tol);
        if (sh.is_collinear()) return false;
        const bool in_subset =
            std::find(subset.begin(), subset.end(), l) != subset.end();
        if (!sh.is_hit()) {
            if (in_subset) return false;
            continue;
        }
        if (!in_subset) return false;  // a fifth edge or a vertex region
        const double t = sh.hit.seg_param;
        if (sh.hit.vertex_hit || t <= tol.eps_param || t >= 1.0 - tol.eps_param) {
            return false;
        }
        hits_out[static_cast<size_t>(matched++)] = sh.hit;
    }
    if (matched != 4) return false;
    const double scale = knot.diameter();
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            if ((hits_out[static_cast<size_t>(i)].point -
                 hits_out[static_cast<size_t>(j)].point)
                    .norm() <= tol.eps_incidence * scale) {
                return false;
            }
        }
    }
    return true;
}

ShardResult process_subsets(const PolygonalKnot& knot,
                            const std::vector<std::array<int, 4>>& subsets,
                            size_t begin, size_t end, const Tolerance& tol,
                            bool validate) {
    ShardResult shard;
    const int n = knot.edge_count();
    for (size_t si = begin; si < end; ++si) {
        const std::array<int, 4>& subset = subsets[si];
        const SubsetCase scase = classify_subset(n, subset);
        const bool theorem_empty =
            scase == SubsetCase::C1 || scase == SubsetCase::C2a;
        if (theorem_empty && !validate) continue;

        std::vector<TransversalHit> candidates;
        try {
            candidates = transversals_of_four_segments(
                {knot.edge(subset[0]), knot.edge(subset[1]), knot.edge(subset[2]),
                 knot.edge(subset[3])},
                tol);
        } catch (const DegenerateError& e) {
            throw DegenerateError(std::string(e.what()) + " at subset " +
                                  subset_string(subset));
        }

        for (const TransversalHit& cand : candidates) {
            std::array<Hit, 4> hits;
            if (!passes_exactly_four(cand.line, knot, subset, tol, hits)) {
                ++shard.rejected;
                continue;
            }
            Quadrisecant q;
            q.line = cand.line;
            q.subset = subset;
            q.hits = hits;
            q.subset_case = scase;
            if (cand.near_degenerate) {
                q.warnings.push_back("tangential root: count unstable under perturbation");
            }
            if (theorem_empty) {
                q.warnings.push_back("subset case admits no quadrisecant");
                shard.warnings.push_back("validate: unexpected quadrisecant at subset " +
                                         subset_string(subset));
            }
            shard.found.push_back(std::move(q));
        }
    }
    return shard;
}

} // namespace

QuadrisecantReport enumerate_quadrisecants(const PolygonalKnot& knot,
                                           const Tolerance& tol,
                                           const EnumerationOptions& options) {
    QuadrisecantReport report;
    report.vertices = knot.vertices();
    report.tolerance = tol;
    report.general_position = check_general_position(knot, tol);
    if (!report.general_position.pass) {
        if (!options.skip_gp_check) {
            throw GeneralPositionError("knot fails general position",
                                       report.general_position);
        }
        report.gp_bypassed = true;
        report.warnings.push_back(
            "general position bypassed: counts carry no bound guarantee");
    }

    const int n = knot.edge_count();
    report.census = (n >= 3) ? census_closed_form(n) : CensusTable{};
    report.bound = (n >= 3) ? upper_bound(n) : 0;

    const std::vector<std::array<int, 4>> subsets = all_subsets(n);
    const int threads =
        std::max(1, std::min<int>(options.threads,
                                  static_cast<int>(subsets.size() ? subsets.size() : 1)));

    std::vector<ShardResult> shards(static_cast<size_t>(threads));
    if (threads == 1) {
        shards[0] = process_subsets(knot, subsets, 0, subsets.size(), tol,
                                    options.validate);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(static_cast<size_t>(threads));
        const size_t chunk = (subsets.size() + static_cast<size_t>(threads) - 1) /
                             static_cast<size_t>(threads);
        for (int t = 0; t < threads; ++t) {
            const size_t begin = std::min(subsets.size(), static_cast<size_t>(t) * chunk);
            const size_t end = std::min(subsets.size(), begin + chunk);
            pool.emplace_back([&, t, begin, end] {
                try {
                    shards[static_cast<size_t>(t)] = process_subsets(
                        knot, subsets, begin, end, tol, options.validate);
                } catch (...) {
                    errors[static_cast<size_t>(t)] = std::current_exception();
                }
            });
        }
        for (std::thread& th : pool) th.join();
        for (const std::exception_ptr& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    // Merge in shard order (= lexicographic subset order), then deduplicate
    // by canonical line key. A generic quadrisecant determines its subset, so
    // a cross-subset duplicate signals tolerance trouble and is flagged.
    for (ShardResult& shard : shards) {
        for (Quadrisecant& q : shard.found) {
            bool dup = false;
            for (const Quadrisecant& kept : report.quadrisecants) {
                if (lines_equal(kept.line, q.line, 1e-7)) {
                    dup = true;
                    report.warnings.push_back(
                        "duplicate line across subsets " + subset_string(kept.subset) +
                        " and " + subset_string(q.subset));
                    break;
                }
            }
            if (!dup) report.quadrisecants.push_back(std::move(q));
        }
        report.candidates_rejected += shard.rejected;
        for (std::string& w : shard.warnings) {
            report.warnings.push_back(std::move(w));
        }
    }

    for (const Quadrisecant& q : report.quadrisecants) {
        report.per_case_counts[static_cast<size_t>(q.subset_case)] += 1;
        for (const std::string& w : q.warnings) {
            if (w.rfind("tangential", 0) == 0) {
                report.warnings.push_back("near-degenerate line at subset " +
                                          subset_string(q.subset));
            }
        }
    }
    if (report.general_position.pass) {
        const double floor = 1e-6;
        if (report.general_position.min_margin_coplanar < floor ||
            report.general_position.min_margin_quadric < floor) {
            report.warnings.push_back(
                "general-position margins are thin; counts may be "
                "perturbation-sensitive");
        }
    }
    return report;
}

std::vector<CaseBoundViolation> verify_case_bounds(const QuadrisecantReport& report) {
    std::map<std::array<int, 4>, int> tally;
    for (const Quadrisecant& q : report.quadrisecants) {
        tally[q.subset] += 1;
    }
    std::vector<CaseBoundViolation> violations;
    const int n = report.edge_count();
    for (const auto& [subset, found] : tally) {
        const SubsetCase scase = classify_subset(n, subset);
        const int maximum = case_max_quadrisecants(scase);
        if (found > maximum) {
            violations.push_back({subset, scase, found, maximum});
        }
    }
    return violations;
}

} // namespace quadrisect
