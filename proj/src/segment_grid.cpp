#include "reifflow/segment_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace reifflow {

void SegmentGrid::add(const Polyline& p) {
    const std::size_t nseg = p.segment_count();
    for (std::size_t i = 0; i < nseg; ++i) {
        auto [a, b] = p.segment(i);
        segs_a_.push_back(a);
        segs_b_.push_back(b);
        bb_.expand(a);
        bb_.expand(b);
    }
    if (p.pts.size() == 1) {  // isolated point, degenerate segment
        segs_a_.push_back(p.pts[0]);
        segs_b_.push_back(p.pts[0]);
        bb_.expand(p.pts[0]);
    }
}

void SegmentGrid::build() {
    if (segs_a_.empty()) return;
    double total = 0.0;
    for (std::size_t i = 0; i < segs_a_.size(); ++i) total += dist(segs_a_[i], segs_b_[i]);
    const double avg = total / static_cast<double>(segs_a_.size());
    const double diag = std::max(bb_.diag(), 1e-300);
    cell_ = std::max(std::max(avg, diag / 512.0), 1e-300);
    ncx_ = std::max(1, static_cast<int>(std::ceil(bb_.size().x / cell_)) + 1);
    ncy_ = std::max(1, static_cast<int>(std::ceil(bb_.size().y / cell_)) + 1);
    buckets_.assign(static_cast<std::size_t>(ncx_) * ncy_, {});

    auto cx_of = [&](double x) {
        return std::clamp(static_cast<int>((x - bb_.lo.x) / cell_), 0, ncx_ - 1);
    };
    auto cy_of = [&](double y) {
        return std::clamp(static_cast<int>((y - bb_.lo.y) / cell_), 0, ncy_ - 1);
    };
    for (std::size_t i = 0; i < segs_a_.size(); ++i) {
        const Vec2 a = segs_a_[i], b = segs_b_[i];
        const int x0 = cx_of(std::min(a.x, b.x)), x1 = cx_of(std::max(a.x, b.x));
        const int y0 = cy_of(std::min(a.y, b.y)), y1 = cy_of(std::max(a.y, b.y));
        for (int cy = y0; cy <= y1; ++cy)
            for (int cx = x0; cx <= x1; ++cx)
                buckets_[static_cast<std::size_t>(cy) * ncx_ + cx].push_back(
                    static_cast<std::uint32_t>(i));
    }
}

std::pair<double, std::size_t> SegmentGrid::nearest(Vec2 p) const {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = 0;
    if (segs_a_.empty()) return {best, best_i};

    const int pcx = std::clamp(static_cast<int>((p.x - bb_.lo.x) / cell_), 0, ncx_ - 1);
    const int pcy = std::clamp(static_cast<int>((p.y - bb_.lo.y) / cell_), 0, ncy_ - 1);

    // Anything not yet scanned after ring k lies beyond at least one wall of
    // the box [pcx-k, pcx+k] x [pcy-k, pcy+k]; negative (p outside the box
    // after clamping) means no bound yet.
    auto outside_lower_bound = [&](int k) {
        const double dxl = p.x - (bb_.lo.x + (pcx - k) * cell_);
        const double dxr = (bb_.lo.x + (pcx + k + 1) * cell_) - p.x;
        const double dyb = p.y - (bb_.lo.y + (pcy - k) * cell_);
        const double dyt = (bb_.lo.y + (pcy + k + 1) * cell_) - p.y;
        return std::max(0.0, std::min(std::min(dxl, dxr), std::min(dyb, dyt)));
    };

    const int max_ring = ncx_ + ncy_;
    for (int k = 0; k <= max_ring; ++k) {
        const int x0 = pcx - k, x1 = pcx + k, y0 = pcy - k, y1 = pcy + k;
        for (int cy = y0; cy <= y1; ++cy) {
            if (cy < 0 || cy >= ncy_) continue;
            for (int cx = x0; cx <= x1; ++cx) {
                if (cx < 0 || cx >= ncx_) continue;
                if (k > 0 && cx != x0 && cx != x1 && cy != y0 && cy != y1) continue;
                for (std::uint32_t i : buckets_[static_cast<std::size_t>(cy) * ncx_ + cx]) {
                    const double d = point_segment_distance(p, segs_a_[i], segs_b_[i]);
                    if (d < best) { best = d; best_i = i; }
                }
            }
        }
        if (best <= outside_lower_bound(k)) break;
        if (x0 <= 0 && y0 <= 0 && x1 >= ncx_ - 1 && y1 >= ncy_ - 1) break;
    }
    return {best, best_i};
}

double SegmentGrid::distance(Vec2 p) const { return nearest(p).first; }

}  // namespace reifflow
