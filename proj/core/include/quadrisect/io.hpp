#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quadrisect/enumerate.hpp"
#include "quadrisect/factory.hpp"
#include "quadrisect/knot.hpp"

namespace quadrisect {

/// On-disk knot document, format_version "1": vertices plus optional
/// metadata (name, factory spec).
struct KnotDocument {
    std::vector<Point3> vertices;
    std::string name;                       // empty = absent
    std::optional<KnotSpec> factory_spec;   // present for generated knots
};

std::string write_knot_json(const KnotDocument& doc);
KnotDocument read_knot_json(const std::string& text);  // throws ParseError

/// Versioned report document; numbers round-trip losslessly.
std::string write_report_json(const QuadrisecantReport& report);
QuadrisecantReport read_report_json(const std::string& text);  // throws ParseError

/// Human-readable forms (6 significant digits).
std::string write_report_table(const QuadrisecantReport& report);
std::string write_gp_table(const GeneralPositionReport& report);
std::string write_gp_json(const GeneralPositionReport& report);

/// Census rows n = n_min..n_max as `n,s1,s21,s22,s3,s4,u` CSV.
std::string write_census_csv(int n_min, int n_max);
std::string write_census_table(int n_min, int n_max);

/// Wavefront OBJ with `v`/`l` records only: the knot as a closed polyline
/// plus one segment per quadrisecant line, clipped to 1.5x the knot's
/// bounding box.
std::string write_obj(const std::vector<Point3>& vertices,
                      const std::vector<PluckerLine>& quadrisecants);

} // namespace quadrisect
