#include "quadrisect/io.hpp"

#include <json.hpp>

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace quadrisect {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kFormatVersion = "1";

json vec_to_json(const Point3& p) { return json::array({p.x, p.y, p.z}); }

Point3 vec_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) {
        throw ParseError("expected [x, y, z] triple");
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

// Infinite margins (vacuous conditions) serialize as null.
json margin_to_json(double m) {
    if (std::isinf(m)) return nullptr;
    return m;
}

double margin_from_json(const json& j) {
    if (j.is_null()) return std::numeric_limits<double>::infinity();
    return j.get<double>();
}

json gp_to_json(const GeneralPositionReport& gp) {
    json j;
    j["pass"] = gp.pass;
    j["coplanar_violations"] = json::array();
    for (const auto& v : gp.coplanar_violations) {
        j["coplanar_violations"].push_back(json::array({v[0], v[1], v[2], v[3]}));
    }
    j["quadric_violations"] = json::array();
    for (const auto& v : gp.quadric_violations) {
        json entry;
        entry["triple"] = json::array({v.triple[0], v.triple[1], v.triple[2]});
        entry["edge"] = v.edge;
        j["quadric_violations"].push_back(entry);
    }
    j["min_margin_coplanar"] = margin_to_json(gp.min_margin_coplanar);
    j["min_margin_quadric"] = margin_to_json(gp.min_margin_quadric);
    return j;
}

GeneralPositionReport gp_from_json(const json& j) {
    GeneralPositionReport gp;
    gp.pass = j.at("pass").get<bool>();
    for (const auto& v : j.at("coplanar_violations")) {
        gp.coplanar_violations.push_back(
            {v[0].get<int>(), v[1].get<int>(), v[2].get<int>(), v[3].get<int>()});
    }
    for (const auto& v : j.at("quadric_violations")) {
        const auto& t = v.at("triple");
        gp.quadric_violations.push_back(
            {{t[0].get<int>(), t[1].get<int>(), t[2].get<int>()},
             v.at("edge").get<int>()});
    }
    gp.min_margin_coplanar = margin_from_json(j.at("min_margin_coplanar"));
    gp.min_margin_quadric = margin_from_json(j.at("min_margin_quadric"));
    return gp;
}

json census_to_json(const CensusTable& t) {
    json j;
    j["n"] = t.n;
    j["s1"] = t.s1;
    j["s21"] = t.s21;
    j["s22"] = t.s22;
    j["s3"] = t.s3;
    j["s4"] = t.s4;
    j["u"] = t.u;
    return j;
}

CensusTable census_from_json(const json& j) {
    CensusTable t;
    t.n = j.at("n").get<int>();
    t.s1 = j.at("s1").get<std::int64_t>();
    t.s21 = j.at("s21").get<std::int64_t>();
    t.s22 = j.at("s22").get<std::int64_t>();
    t.s3 = j.at("s3").get<std::int64_t>();
    t.s4 = j.at("s4").get<std::int64_t>();
    t.u = j.at("u").get<std::int64_t>();
    return t;
}

SubsetCase case_from_string(const std::string& s) {
    if (s == "1") return SubsetCase::C1;
    if (s == "2a") return SubsetCase::C2a;
    if (s == "2b") return SubsetCase::C2b;
    if (s == "3") return SubsetCase::C3;
    if (s == "4") return SubsetCase::C4;
    throw ParseError("unknown subset case: " + s);
}

json parse_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw ParseError("document root must be an object");
    }
    const auto it = j.find("format_version");
    if (it == j.end() || !it->is_string() || it->get<std::string>() != kFormatVersion) {
        throw ParseError("unrecognized format_version");
    }
    return j;
}

std::string format6(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

} // namespace

std::string write_knot_json(const KnotDocument& doc) {
    json j;
    j["format_version"] = kFormatVersion;
    j["vertices"] = json::array();
    for (const Point3& v : doc.vertices) {
        j["vertices"].push_back(vec_to_json(v));
    }
    if (!doc.name.empty() || doc.factory_spec) {
        json meta;
        if (!doc.name.empty()) meta["name"] = doc.name;
        if (doc.factory_spec) {
            const KnotSpec& spec = *doc.factory_spec;
            json f;
            f["kind"] = to_string(spec.kind);
            f["n"] = spec.n;
            f["seed"] = spec.seed;
            f["perturbation"] = spec.perturbation;
            f["radius"] = spec.radius;
            f["rng"] = kRngAlgorithm;
            meta["factory"] = f;
        }
        j["metadata"] = meta;
    }
    return j.dump(2) + "\n";
}

KnotDocument read_knot_json(const std::string& text) {
    const json j = parse_document(text);
    KnotDocument doc;
    const auto vit = j.find("vertices");
    if (vit == j.end() || !vit->is_array()) {
        throw ParseError("knot document needs a vertices array");
    }
    for (const auto& v : *vit) {
        doc.vertices.push_back(vec_from_json(v));
    }
    if (j.contains("metadata")) {
        const json& meta = j.at("metadata");
        if (meta.contains("name")) doc.name = meta.at("name").get<std::string>();
        if (meta.contains("factory")) {
            const json& f = meta.at("factory");
            KnotSpec spec;
            spec.kind = knot_kind_from_string(f.at("kind").get<std::string>());
            spec.n = f.at("n").get<int>();
            spec.seed = f.at("seed").get<std::uint64_t>();
            spec.perturbation = f.at("perturbation").get<double>();
            spec.radius = f.at("radius").get<double>();
            doc.factory_spec = spec;
        }
    }
    return doc;
}

std::string write_report_json(const QuadrisecantReport& report) {
    json j;
    j["format_version"] = kFormatVersion;
    if (!report.knot_name.empty()) j["name"] = report.knot_name;
    j["n"] = report.edge_count();
    j["vertices"] = json::array();
    for (const Point3& v : report.vertices) {
        j["vertices"].push_back(vec_to_json(v));
    }
    j["tolerances"] = {{"eps_coplanar", report.tolerance.eps_coplanar},
                       {"eps_incidence", report.tolerance.eps_incidence},
                       {"eps_param", report.tolerance.eps_param}};
    j["general_position"] = gp_to_json(report.general_position);
    j["gp_bypassed"] = report.gp_bypassed;
    j["count"] = report.count();
    j["bound"] = report.bound;
    j["census"] = census_to_json(report.census);
    j["per_case_counts"] = {{"1", report.per_case_counts[0]},
                            {"2a", report.per_case_counts[1]},
                            {"2b", report.per_case_counts[2]},
                            {"3", report.per_case_counts[3]},
                            {"4", report.per_case_counts[4]}};
    j["candidates_rejected"] = report.candidates_rejected;
    j["warnings"] = report.warnings;
    j["quadrisecants"] = json::array();
    for (const Quadrisecant& q : report.quadrisecants) {
        json e;
        e["subset"] = json::array({q.subset[0], q.subset[1], q.subset[2], q.subset[3]});
        e["case"] = to_string(q.subset_case);
        e["line"] = {{"d", vec_to_json(q.line.d)}, {"m", vec_to_json(q.line.m)}};
        e["hits"] = json::array();
        for (size_t i = 0; i < 4; ++i) {
            const Hit& h = q.hits[i];
            json hj;
            hj["edge"] = q.subset[i];
            hj["seg_param"] = h.seg_param;
            hj["line_param"] = h.line_param;
            hj["vertex_hit"] = h.vertex_hit;
            hj["point"] = vec_to_json(h.point);
            e["hits"].push_back(hj);
        }
        e["warnings"] = q.warnings;
        j["quadrisecants"].push_back(e);
    }
    return j.dump(2) + "\n";
}

QuadrisecantReport read_report_json(const std::string& text) {
    const json j = parse_document(text);
    QuadrisecantReport report;
    if (j.contains("name")) report.knot_name = j.at("name").get<std::string>();
    for (const auto& v : j.at("vertices")) {
        report.vertices.push_back(vec_from_json(v));
    }
    const json& tols = j.at("tolerances");
    report.tolerance.eps_coplanar = tols.at("eps_coplanar").get<double>();
    report.tolerance.eps_incidence = tols.at("eps_incidence").get<double>();
    report.tolerance.eps_param = tols.at("eps_param").get<double>();
    report.general_position = gp_from_json(j.at("general_position"));
    report.gp_bypassed = j.at("gp_bypassed").get<bool>();
    report.bound = j.at("bound").get<std::int64_t>();
    report.census = census_from_json(j.at("census"));
    const json& pc = j.at("per_case_counts");
    report.per_case_counts = {pc.at("1").get<std::int64_t>(),
                              pc.at("2a").get<std::int64_t>(),
                              pc.at("2b").get<std::int64_t>(),
                              pc.at("3").get<std::int64_t>(),
                              pc.at("4").get<std::int64_t>()};
    report.candidates_rejected = j.at("candidates_rejected").get<std::int64_t>();
    report.warnings = j.at("warnings").get<std::vector<std::string>>();
    for (const auto& e : j.at("quadrisecants")) {
        Quadrisecant q;
        const auto& sub = e.at("subset");
        q.subset = {sub[0].get<int>(), sub[1].get<int>(), sub[2].get<int>(),
                    sub[3].get<int>()};
        q.subset_case = case_from_string(e.at("case").get<std::string>());
        q.line.d = vec_from_json(e.at("line").at("d"));
        q.line.m = vec_from_json(e.at("line").at("m"));
        const auto& hits = e.at("hits");
        if (hits.size() != 4) throw ParseError("quadrisecant needs 4 hits");
        for (size_t i = 0; i < 4; ++i) {
            const auto& hj = hits[i];
            q.hits[i].seg_param = hj.at("seg_param").get<double>();
            q.hits[i].line_param = hj.at("line_param").get<double>();
            q.hits[i].vertex_hit = hj.at("vertex_hit").get<bool>();
            q.hits[i].point = vec_from_json(hj.at("point"));
        }
        q.warnings = e.at("warnings").get<std::vector<std::string>>();
        report.quadrisecants.push_back(std::move(q));
    }
    const std::int64_t count = j.at("count").get<std::int64_t>();
    if (count != report.count()) {
        throw ParseError("report count disagrees with quadrisecant list");
    }
    return report;
}

std::string write_gp_json(const GeneralPositionReport& report) {
    json j;
    j["format_version"] = kFormatVersion;
    j["general_position"] = gp_to_json(report);
    return j.dump(2) + "\n";
}

std::string write_gp_table(const GeneralPositionReport& report) {
    std::ostringstream os;
    os << "general position: " << (report.pass ? "pass" : "FAIL") << "\n";
    os << "  min margin, vertex coplanarity: ";
    if (std::isinf(report.min_margin_coplanar)) {
        os << "n/a (fewer than 4 vertices)";
    } else {
        os << format6(report.min_margin_coplanar);
    }
    os << "\n  min margin, quadric containment: ";
    if (std::isinf(report.min_margin_quadric)) {
        os << "n/a (no pairwise-skew edge triple)";
    } else {
        os << format6(report.min_margin_quadric);
    }
    os << "\n";
    for (const auto& v : report.coplanar_violations) {
        os << "  coplanar vertices {" << v[0] << "," << v[1] << "," << v[2] << ","
           << v[3] << "}\n";
    }
    for (const auto& v : report.quadric_violations) {
        if (v.edge < 0) {
            os << "  degenerate quadric for edge triple {" << v.triple[0] << ","
               << v.triple[1] << "," << v.triple[2] << "}\n";
        } else {
            os << "  edge " << v.edge << " lies on the quadric of {" << v.triple[0]
               << "," << v.triple[1] << "," << v.triple[2] << "}\n";
        }
    }
    return os.str();
}

std::string write_report_table(const QuadrisecantReport& report) {
    std::ostringstream os;
    os << std::setprecision(6);
    os << "knot";
    if (!report.knot_name.empty()) os << " \"" << report.knot_name << "\"";
    os << ": n=" << report.edge_count() << "\n";
    os << "tolerances: eps_coplanar=" << report.tolerance.eps_coplanar
       << " eps_incidence=" << report.tolerance.eps_incidence
       << " eps_param=" << report.tolerance.eps_param << "\n";
    os << write_gp_table(report.general_position);
    const CensusTable& t = report.census;
    os << "census: s1=" << t.s1 << " s21=" << t.s21 << " s22=" << t.s22
       << " s3=" << t.s3 << " s4=" << t.s4 << "\n";
    os << "bound: " << report.bound << "\n";
    os << "quadrisecants: " << report.count()
       << " (candidates rejected: " << report.candidates_rejected << ")\n";
    int idx = 1;
    for (const Quadrisecant& q : report.quadrisecants) {
        os << "  [" << idx++ << "] edges {" << q.subset[0] << "," << q.subset[1]
           << "," << q.subset[2] << "," << q.subset[3] << "} case "
           << to_string(q.subset_case) << "\n";
        os << "      direction (" << q.line.d.x << ", " << q.line.d.y << ", "
           << q.line.d.z << ")  moment (" << q.line.m.x << ", " << q.line.m.y
           << ", " << q.line.m.z << ")\n";
        for (size_t i = 0; i < 4; ++i) {
            const Hit& h = q.hits[i];
            os << "      edge " << q.subset[i] << " t=" << h.seg_param << " at ("
               << h.point.x << ", " << h.point.y << ", " << h.point.z << ")\n";
        }
        for (const std::string& w : q.warnings) {
            os << "      warning: " << w << "\n";
        }
    }
    for (const std::string& w : report.warnings) {
        os << "warning: " << w << "\n";
    }
    return os.str();
}

std::string write_census_csv(int n_min, int n_max) {
    std::ostringstream os;
    os << "n,s1,s21,s22,s3,s4,u\n";
    for (int n = n_min; n <= n_max; ++n) {
        const CensusTable t = census_closed_form(n);
        os << t.n << "," << t.s1 << "," << t.s21 << "," << t.s22 << "," << t.s3
           << "," << t.s4 << "," << t.u << "\n";
    }
    return os.str();
}

std::string write_census_table(int n_min, int n_max) {
    std::ostringstream os;
    os << std::setw(5) << "n" << std::setw(10) << "s1" << std::setw(10) << "s21"
       << std::setw(10) << "s22" << std::setw(12) << "s3" << std::setw(14) << "s4"
       << std::setw(14) << "u" << "\n";
    for (int n = n_min; n <= n_max; ++n) {
        const CensusTable t = census_closed_form(n);
        os << std::setw(5) << t.n << std::setw(10) << t.s1 << std::setw(10) << t.s21
           << std::setw(10) << t.s22 << std::setw(12) << t.s3 << std::setw(14)
           << t.s4 << std::setw(14) << t.u << "\n";
    }
    return os.str();
}

std::string write_obj(const std::vector<Point3>& vertices,
                      const std::vector<PluckerLine>& quadrisecants) {
    std::ostringstream os;
    os << std::setprecision(9);

    Point3 lo = vertices.at(0), hi = vertices.at(0);
    for (const Point3& v : vertices) {
        lo = {std::min(lo.x, v.x), std::min(lo.y, v.y), std::min(lo.z, v.z)};
        hi = {std::max(hi.x, v.x), std::max(hi.y, v.y), std::max(hi.z, v.z)};
    }
    const Point3 center = (lo + hi) * 0.5;
    const double diag = (hi - lo).norm();
    // 1.5x the bounding box, with a floor so flat knots still get a box
    Vec3 half = (hi - lo) * 0.75;
    const double floor_extent = 0.05 * (diag > 0 ? diag : 1.0);
    half = {std::max(half.x, floor_extent), std::max(half.y, floor_extent),
            std::max(half.z, floor_extent)};
    const Point3 box_lo = center - half;
    const Point3 box_hi = center + half;

    for (const Point3& v : vertices) {
        os << "v " << v.x << " " << v.y << " " << v.z << "\n";
    }
    os << "l";
    for (size_t i = 1; i <= vertices.size(); ++i) os << " " << i;
    os << " 1\n";

    int next_index = static_cast<int>(vertices.size()) + 1;
    for (const PluckerLine& line : quadrisecants) {
        // clip the line to the box by slabs
        const Point3 p0 = line.base_point();
        double tmin = -std::numeric_limits<double>::infinity();
        double tmax = std::numeric_limits<double>::infinity();
        bool outside = false;
        const double dir[3] = {line.d.x, line.d.y, line.d.z};
        const double org[3] = {p0.x, p0.y, p0.z};
        const double blo[3] = {box_lo.x, box_lo.y, box_lo.z};
        const double bhi[3] = {box_hi.x, box_hi.y, box_hi.z};
        for (int axis = 0; axis < 3; ++axis) {
            if (std::abs(dir[axis]) < 1e-15) {
                if (org[axis] < blo[axis] || org[axis] > bhi[axis]) {
                    outside = true;
                    break;
                }
                continue;
            }
            double t0 = (blo[axis] - org[axis]) / dir[axis];
            double t1 = (bhi[axis] - org[axis]) / dir[axis];
            if (t0 > t1) std::swap(t0, t1);
            tmin = std::max(tmin, t0);
            tmax = std::min(tmax, t1);
        }
        if (outside || tmin >= tmax) continue;
        const Point3 a = line.at(tmin);
        const Point3 b = line.at(tmax);
        os << "v " << a.x << " " << a.y << " " << a.z << "\n";
        os << "v " << b.x << " " << b.y << " " << b.z << "\n";
        os << "l " << next_index << " " << next_index + 1 << "\n";
        next_index += 2;
    }
    return os.str();
}

} // namespace quadrisect
