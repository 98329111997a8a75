#pragma once

#include <string>
#include <vector>

#include "reifflow/geometry.hpp"

namespace reifflow {

/// Affine line, |direction| = 1 within 1e-12.
struct Line {
    Vec2 point;
    Vec2 direction;

    static Line make(Vec2 point, Vec2 direction);
};

struct FlatnessSample {
    Vec2 center;
    double radius = 0.0;
    double deviation = 0.0;            // unconstrained infimum over lines
    double deviation_through_center = 0.0;  // line forced through the center
    Line best_line{{0, 0}, {1, 0}};
};

/// Per-scale Reifenberg deviations. deviations[i] is the sup over sampled
/// centers of the scale-normalized local Hausdorff gap to the best line.
struct FlatnessReport {
    std::vector<double> scales;
    std::vector<double> deviations;
    std::vector<FlatnessSample> per_point;
    std::vector<std::string> warnings;  // e.g. skipped scales

    double max_deviation() const;
};

struct FlatnessResult {
    double deviation = 0.0;
    double deviation_through_center = 0.0;
    Line best_line{{0, 0}, {1, 0}};
};

/// inf over lines P of d_H(P cap B, X cap B) / radius, approximated by a
/// two-stage search (64 angles x 64 offsets, then 3 local refinement rounds
/// shrinking the window by 4 each time). The line is not constrained to pass
/// through the center. Throws when X misses the ball.
double flatness_deviation(const Curve& x, Vec2 center, double radius);
FlatnessResult flatness_deviation_detail(const Curve& x, Vec2 center, double radius);

/// Certificate over the given ascending scales; centers are every
/// sample_stride-th curve vertex. Scales exceeding the curve diameter are
/// skipped with a warning record.
FlatnessReport reifenberg_certificate(const Curve& x, const std::vector<double>& scales,
                                      std::size_t sample_stride,
                                      bool record_per_point = false);

/// FlatnessReport CSV, header "scale,deviation".
std::string flatness_report_csv(const FlatnessReport& report);

}  // namespace reifflow
