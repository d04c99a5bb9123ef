#include "quadrisect/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

#include "quadrisect/enumerate.hpp"
#include "quadrisect/factory.hpp"
#include "quadrisect/io.hpp"

namespace quadrisect::cli {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

PolygonalKnot load_knot(const std::string& path, const Tolerance& tol,
                        KnotDocument* doc_out) {
    KnotDocument doc = read_knot_json(slurp(path));
    PolygonalKnot knot = build_knot(doc.vertices, tol);
    if (doc_out) *doc_out = std::move(doc);
    return knot;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Generic quadrisecants of polygonal knots"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    Tolerance tol;
    std::string format = "table";
    int threads = 1;
    bool validate = false;
    app.add_option("--eps-coplanar", tol.eps_coplanar, "Coplanarity tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--eps-incidence", tol.eps_incidence, "Incidence tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--eps-param", tol.eps_param, "Parameter tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    app.add_option("--threads", threads, "Worker threads for enumeration")
        ->check(CLI::PositiveNumber);
    app.add_flag("--validate", validate,
                 "Also solve subsets the case analysis rules out and check "
                 "they come up empty");

    std::string check_path;
    auto* cmd_check = app.add_subcommand("check", "General-position report");
    cmd_check->add_option("knot", check_path, "Knot JSON document")->required();

    std::string enum_path;
    bool allow_gp_fail = false;
    auto* cmd_enum = app.add_subcommand("enumerate", "Enumerate quadrisecants");
    cmd_enum->add_option("knot", enum_path, "Knot JSON document")->required();
    cmd_enum->add_flag("--allow-gp-fail", allow_gp_fail,
                       "Enumerate even when general position fails (no bound "
                       "guarantee)");

    int census_max = 0;
    bool census_verify = false;
    auto* cmd_census = app.add_subcommand("census", "Subset-census table");
    cmd_census->add_option("--n-max", census_max, "Largest edge count")
        ->required()
        ->check(CLI::Range(3, 100000));
    cmd_census->add_flag("--verify", census_verify,
                         "Cross-check against brute-force enumeration");

    int bound_n = 0;
    auto* cmd_bound = app.add_subcommand("bound", "Quadrisecant bound for n edges");
    cmd_bound->add_option("--n", bound_n, "Edge count")->required()->check(
        CLI::Range(3, 100000));

    std::string gen_kind;
    int gen_n = -1;
    std::uint64_t gen_seed = 0;
    double gen_perturb = 0.0;
    double gen_radius = 1.0;
    auto* cmd_gen = app.add_subcommand("generate", "Emit a factory knot as JSON");
    cmd_gen->add_option("--kind", gen_kind, "regular-unknot|hex-trefoil|hept-fig8|random")
        ->required();
    cmd_gen->add_option("--n", gen_n, "Edge count");
    cmd_gen->add_option("--seed", gen_seed, "Generator seed");
    cmd_gen->add_option("--perturb", gen_perturb, "Vertex perturbation magnitude");
    cmd_gen->add_option("--radius", gen_radius, "Polygon radius");

    std::string obj_path;
    std::string obj_report;
    auto* cmd_obj = app.add_subcommand("export-obj",
                                       "Knot polyline (+ report lines) as OBJ");
    cmd_obj->add_option("knot", obj_path, "Knot JSON document")->required();
    cmd_obj->add_option("--report", obj_report,
                        "Report JSON whose quadrisecants to include");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*cmd_check) {
            const PolygonalKnot knot = load_knot(check_path, tol, nullptr);
            const GeneralPositionReport gp = check_general_position(knot, tol);
            if (format == "json") {
                out << write_gp_json(gp);
            } else {
                out << write_gp_table(gp);
            }
            return gp.pass ? kExitOk : kExitGeneralPosition;
        }

        if (*cmd_enum) {
            KnotDocument doc;
            const PolygonalKnot knot = load_knot(enum_path, tol, &doc);
            EnumerationOptions opts;
            opts.validate = validate;
            opts.skip_gp_check = allow_gp_fail;
            opts.threads = threads;
            QuadrisecantReport report;
            try {
                report = enumerate_quadrisecants(knot, tol, opts);
            } catch (const GeneralPositionError& e) {
                err << "error: " << e.what() << "\n";
                if (format == "json") {
                    out << write_gp_json(e.report());
                } else {
                    out << write_gp_table(e.report());
                }
                return kExitGeneralPosition;
            }
            report.knot_name = doc.name;
            if (format == "json") {
                out << write_report_json(report);
            } else {
                out << write_report_table(report);
            }
            return kExitOk;
        }

        if (*cmd_census) {
            if (census_verify) {
                for (int n = 4; n <= census_max; ++n) {
                    const CensusTable closed = census_closed_form(n);
                    const CensusTable brute = census_bruteforce(n);
                    if (!(closed == brute)) {
                        err << "census mismatch at n=" << n << "\n";
                        return kExitVerifyMismatch;
                    }
                }
            }
            if (format == "csv") {
                out << write_census_csv(3, census_max);
            } else if (format == "json") {
                err << "error: census output supports table or csv\n";
                return kExitUsage;
            } else {
                out << write_census_table(3, census_max);
            }
            return kExitOk;
        }

        if (*cmd_bound) {
            out << upper_bound(bound_n) << "\n";
            return kExitOk;
        }

        if (*cmd_gen) {
            KnotSpec spec;
            spec.kind = knot_kind_from_string(gen_kind);
            spec.seed = gen_seed;
            spec.perturbation = gen_perturb;
            spec.radius = gen_radius;
            switch (spec.kind) {
                case KnotKind::HexTrefoil: spec.n = 6; break;
                case KnotKind::HeptFig8: spec.n = 7; break;
                default:
                    if (gen_n < 3) {
                        err << "error: --n (>= 3) required for kind " << gen_kind
                            << "\n";
                        return kExitUsage;
                    }
                    spec.n = gen_n;
            }
            if ((spec.kind == KnotKind::HexTrefoil && gen_n >= 0 && gen_n != 6) ||
                (spec.kind == KnotKind::HeptFig8 && gen_n >= 0 && gen_n != 7)) {
                err << "error: " << gen_kind << " has a fixed edge count\n";
                return kExitUsage;
            }
            const PolygonalKnot knot = make_knot(spec, tol);
            KnotDocument doc;
            doc.vertices = knot.vertices();
            doc.name = to_string(spec.kind);
            doc.factory_spec = spec;
            out << write_knot_json(doc);
            return kExitOk;
        }

        if (*cmd_obj) {
            KnotDocument doc;
            const PolygonalKnot knot = load_knot(obj_path, tol, &doc);
            std::vector<PluckerLine> lines;
            if (!obj_report.empty()) {
                const QuadrisecantReport report = read_report_json(slurp(obj_report));
                for (const Quadrisecant& q : report.quadrisecants) {
                    lines.push_back(q.line);
                }
            }
            out << write_obj(knot.vertices(), lines);
            return kExitOk;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const GenerationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const DegenerateError& e) {
        err << "error: " << e.what() << "\n";
        return kExitGeneralPosition;
    }

    err << "error: no subcommand\n";
    return kExitUsage;
}

} // namespace quadrisect::cli
