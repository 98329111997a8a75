#include "reifflow/hausdorff.hpp"

#include <algorithm>
#include <cmath>

#include "reifflow/errors.hpp"

namespace reifflow {

double directed_hausdorff(const std::vector<Vec2>& samples, const SegmentGrid& target) {
    double worst = 0.0;
    for (Vec2 p : samples) worst = std::max(worst, target.distance(p));
    return worst;
}

namespace {

double hausdorff_polylines(const Polyline& a, const Polyline& b) {
    if (a.pts.empty() || b.pts.empty()) throw DomainError("hausdorff_distance: empty input");
    const double diam = std::max(bbox_of(a.pts).diag(), bbox_of(b.pts).diag());
    const double spacing = diam / kHausdorffSampleDivisor;
    const SegmentGrid ga(a), gb(b);
    const double d_ab = directed_hausdorff(a.sample(spacing), gb);
    const double d_ba = directed_hausdorff(b.sample(spacing), ga);
    return std::max(d_ab, d_ba);
}

}  // namespace

double hausdorff_distance(const Polyline& a, const Polyline& b) {
    return hausdorff_polylines(a, b);
}

double hausdorff_distance(const Curve& a, const Curve& b) {
    return hausdorff_polylines(a.as_polyline(), b.as_polyline());
}

double hausdorff_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    if (a.empty() || b.empty()) throw DomainError("hausdorff_distance: empty point set");
    auto directed = [](const std::vector<Vec2>& from, const std::vector<Vec2>& to) {
        double worst = 0.0;
        for (Vec2 p : from) {
            double best = 1e300;
            for (Vec2 q : to) best = std::min(best, dist(p, q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

double local_hausdorff(const Polyline& a, const Polyline& b, Vec2 center, double radius) {
    if (radius <= 0.0) throw DomainError("local_hausdorff: radius must be positive");
    const auto ca = clip_to_ball(a, center, radius);
    const auto cb = clip_to_ball(b, center, radius);
    if (ca.empty() || cb.empty())
        throw EmptyIntersection("local_hausdorff: a clipped set is empty");

    const double spacing = radius / 512.0;
    const SegmentGrid ga(ca), gb(cb);
    double worst = 0.0;
    for (const auto& piece : ca)
        worst = std::max(worst, directed_hausdorff(piece.sample(spacing), gb));
    for (const auto& piece : cb)
        worst = std::max(worst, directed_hausdorff(piece.sample(spacing), ga));
    return worst;
}

double local_hausdorff(const Curve& a, const Curve& b, Vec2 center, double radius) {
    return local_hausdorff(a.as_polyline(), b.as_polyline(), center, radius);
}

}  // namespace reifflow
