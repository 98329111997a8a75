#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reifflow/geometry.hpp"
#include "reifflow/io.hpp"
#include "reifflow/levelset.hpp"

namespace reifflow {

struct ShapeSpec {
    std::string type = "koch";  // koch | circle | ellipse
    // koch
    double beta = 0.0;
    int depth = 0;
    double base_side = 1.0;
    // circle / ellipse
    double radius = 1.0;
    double a = 2.0, b = 1.0;
    int vertex_count = 256;

    Curve build() const;
};

struct ExperimentConfig {
    ShapeSpec shape;
    std::vector<double> scales;  // descending
    double grid_h = 0.0;
    double grid_pad = 0.0;  // 0 -> automatic
    double dt = 0.0;        // 0 -> 0.2 h^2
    double T = 0.0;         // equals the last snapshot time
    std::vector<double> snapshot_times;
    double burn_in_c3 = 4.0;
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    int reinit_every = 25;

    // graph-experiment knobs (kernelconst / interior verbs)
    double g_de = 1.0, g_beta = 0.001, g_M = 10.0, g_lambda = 0.1;
    double g_tau = 0.01, g_L = 1.0, g_h = 5e-4, g_dt = 0.0;

    /// shared_grid_scales: every scale must resolve on the single grid_h;
    /// experiments with per-scale proportional grids only need the largest.
    void validate(bool shared_grid_scales = true) const;
    static ExperimentConfig from_json_text(const std::string& text);
    std::string to_json_text() const;
};

struct ScalingFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double residual = 0.0;  // RMS in log space
};

/// Least-squares line through (log x, log y).
ScalingFit power_fit(std::span<const double> xs, std::span<const double> ys);

/// Signed offsets u(s) of z over y along y's outward vertex normals; one
/// crossing per normal inside the tubular bound or NotAGraphError.
std::vector<std::pair<double, double>> graph_representation(const Curve& y, const Curve& z);

struct ReportFiles {
    std::string name;
    std::vector<std::pair<std::string, CsvTable>> tables;  // filename -> table
    std::vector<std::pair<std::string, PlotSpec>> plots;   // filename -> plot
};

/// Writes every table and plot under out_dir; throws before writing anything
/// if the results are empty.
void emit_report(const std::vector<ReportFiles>& results,
                 const std::filesystem::path& out_dir);

struct UniformScaleResult {
    double r = 0.0;
    bool failed = false;
    std::string error;
    double max_supA_sqrt_t = 0.0;
    double max_dist_over_sqrt_t = 0.0;
    int used_snapshots = 0;
    int connectivity_violations = 0;
};

struct UniformReport {
    std::vector<UniformScaleResult> per_scale;
    double ratio_supA = 0.0;   // max/min across completed scales
    double ratio_dist = 0.0;
    ReportFiles files;
};

/// Thm-1.4-style harness: build X^r, flow it, record sup|A| sqrt(t) and
/// d_H(X^r_t, X)/sqrt(t) for t >= c3 r^2.
UniformReport run_uniform_estimates(const ExperimentConfig& cfg);

struct SeparationPair {
    double r = 0.0, s = 0.0;
    double dh_final = 0.0;
    double rho_final = 0.0;   // dH / (sqrt(r) t^{1/4})
    double sup_u = -1.0;      // graph representation, -1 when not a graph
    bool failed = false;
    std::string error;
};

struct SeparationReport {
    std::vector<SeparationPair> pairs;
    ScalingFit fit;            // dH vs r at the final time
    double rho_max_over_min = 0.0;
    ReportFiles files;
};

SeparationReport run_separation(const ExperimentConfig& cfg);

struct NonfatteningPair {
    double r = 0.0, s = 0.0;   // adjacent scales, s = next smaller
    double t_star = 0.0;       // mid-run time of this comparison
    double gap_r = 0.0, gap_s = 0.0;
    double ratio = 0.0;        // gap_s / gap_r at t_star
    double max_gap_growth = 0.0;  // max over t of gap(t)/gap(first t), r run
    bool failed = false;
    std::string error;
};

struct NonfatteningReport {
    std::vector<NonfatteningPair> pairs;
    ReportFiles files;
};

/// Barrier experiment: X^r offset by +-10 sin(beta) r, both flows evolved,
/// gap(t) recorded. Each adjacent pair (r, r/2) is compared at one common
/// mid-run time t* in [c3 r^2, 1.5 c3 r^2]; grids refine proportionally
/// (h_r = r * grid_h / scales.front()) so the offsets span the same number
/// of cells at every scale.
NonfatteningReport run_nonfattening(const ExperimentConfig& cfg);

}  // namespace reifflow
