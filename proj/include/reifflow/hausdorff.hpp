#pragma once

#include <vector>

#include "reifflow/geometry.hpp"
#include "reifflow/segment_grid.hpp"

namespace reifflow {

/// Samples taken on each side at uniform arc length before measuring; the
/// directed distance is then sample-to-segment, never vertex-to-vertex.
inline constexpr double kHausdorffSampleDivisor = 1024.0;

double hausdorff_distance(const Curve& a, const Curve& b);
double hausdorff_distance(const Polyline& a, const Polyline& b);
/// Point-set variant (no resampling, exact pairwise).
double hausdorff_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b);

/// Hausdorff distance of a and b clipped to the closed ball B(center,radius).
/// Throws EmptyIntersection when either clipped set is empty.
double local_hausdorff(const Polyline& a, const Polyline& b, Vec2 center, double radius);
double local_hausdorff(const Curve& a, const Curve& b, Vec2 center, double radius);

/// max over sample points of a of distance to target.
double directed_hausdorff(const std::vector<Vec2>& samples, const SegmentGrid& target);

}  // namespace reifflow
