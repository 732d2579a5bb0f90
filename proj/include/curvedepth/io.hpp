#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "curvedepth/analysis.hpp"
#include "curvedepth/curve.hpp"
#include "curvedepth/sampling.hpp"

namespace curvedepth {

enum class CurveFormat { jsonl, csv };

/// .csv selects CSV, anything else JSONL.
CurveFormat format_for_path(const std::string& path);

// JSONL: one {"id": ..., "points": [[x1, ..., xd], ...]} object per line.
// CSV: header curve_id,seq,x1..xd then one row per vertex.
std::vector<Curve> read_curves_jsonl(std::istream& in);
std::vector<Curve> read_curves_csv(std::istream& in);
std::vector<Curve> read_curves(const std::string& path);

void write_curves_jsonl(std::ostream& out, std::span<const Curve> curves);
void write_curves_csv(std::ostream& out, std::span<const Curve> curves);
void write_curves(const std::string& path, std::span<const Curve> curves);

/// Plain point list: one point per line, coordinates separated by commas or
/// blanks. A non-numeric first line is taken as a header.
PointCloud read_points(std::istream& in);
PointCloud read_points(const std::string& path);
/// "1.5,2" -> {1.5, 2}
std::vector<double> parse_vector(const std::string& text);

/// Shortest text that parses back to the same double (17 significant digits).
std::string format_double(double x);

/// Throws a data error unless every curve has dimension `dim` (0 = dimension of the first).
int check_dimension(std::span<const Curve> curves, int dim = 0, const std::string& what = "curves");

/// Polylines on the (x1, x2) plane, coloured yellow (low) to red (high) by
/// `values` when given.
void write_svg_curves(std::ostream& out, std::span<const Curve> curves, std::span<const double> values = {});
/// DD scatter: d0 horizontal, d1 vertical, colour by label, with the diagonal.
void write_svg_dd(std::ostream& out, std::span<const DDPoint> points);

}  // namespace curvedepth
