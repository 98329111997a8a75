#include "reifflow/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "reifflow/errors.hpp"

namespace reifflow {

double menger_curvature(Vec2 a, Vec2 b, Vec2 c) {
    const double la = dist(b, c);
    const double lb = dist(a, c);
    const double lc = dist(a, b);
    if (la == 0.0 || lb == 0.0 || lc == 0.0)
        throw DomainError("menger_curvature: duplicate points");
    const double twice_area = std::abs(cross(b - a, c - a));
    if (twice_area == 0.0) return 0.0;
    return 2.0 * twice_area / (la * lb * lc);
}

double discrete_curvature(const Curve& x, std::size_t i) {
    const std::size_t n = x.size();
    if (i >= n) throw DomainError("discrete_curvature: vertex index out of range");
    return menger_curvature(x.vertex(i + n - 1), x.vertex(i), x.vertex(i + 1));
}

double sup_curvature(const Curve& x) {
    double sup = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        sup = std::max(sup, discrete_curvature(x, i));
    return sup;
}

double sup_curvature_resampled(const Curve& x, double spacing) {
    const std::vector<Vec2> pts = x.as_polyline().resample_uniform(spacing);
    if (pts.size() < 3) return 0.0;
    double sup = 0.0;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = pts[(i + n - 1) % n], b = pts[i], c = pts[(i + 1) % n];
        if (dist(a, b) == 0.0 || dist(b, c) == 0.0 || dist(a, c) == 0.0) continue;
        sup = std::max(sup, menger_curvature(a, b, c));
    }
    return sup;
}

}  // namespace reifflow
