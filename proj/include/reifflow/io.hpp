#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "reifflow/geometry.hpp"

namespace reifflow {

/// Fixed 9-significant-digit float formatting used by every CSV emitter,
/// so reruns are byte-identical.
std::string format_g9(double v);
/// Full-precision formatting for geometry files (exact round trip).
std::string format_g17(double v);

/// Curve text format: first line "<vertex_count> closed", then one "x y"
/// pair per line.
void write_curve(const std::filesystem::path& path, const Curve& c);
Curve read_curve(const std::filesystem::path& path);

struct CsvTable {
    std::string header;                          // comma-joined column names
    std::vector<std::vector<double>> rows;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);
std::string csv_to_string(const CsvTable& table);

struct PlotSeries {
    std::string label;
    std::vector<double> xs, ys;
};

/// Self-contained log-log scatter plot with an optional fitted power law.
struct PlotSpec {
    std::string title, x_label, y_label;
    std::vector<PlotSeries> series;
    bool has_fit = false;
    double fit_exponent = 0.0, fit_prefactor = 0.0;
};

void write_svg_loglog(const std::filesystem::path& path, const PlotSpec& spec);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace reifflow
