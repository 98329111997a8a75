#pragma once

#include <vector>

#include "reifflow/geometry.hpp"

namespace reifflow {

/// Uniform-bucket index over a set of segments for nearest-distance queries.
/// Exact: candidates are gathered ring by ring and the search stops only when
/// the ring's lower bound exceeds the best hit.
class SegmentGrid {
  public:
    SegmentGrid() = default;
    explicit SegmentGrid(const Polyline& p) { add(p); build(); }
    explicit SegmentGrid(const std::vector<Polyline>& ps) {
        for (const auto& p : ps) add(p);
        build();
    }

    bool empty() const { return segs_a_.empty(); }
    std::size_t segment_count() const { return segs_a_.size(); }

    double distance(Vec2 p) const;
    /// Distance and index of the nearest segment.
    std::pair<double, std::size_t> nearest(Vec2 p) const;
    Vec2 segment_a(std::size_t i) const { return segs_a_[i]; }
    Vec2 segment_b(std::size_t i) const { return segs_b_[i]; }

  private:
    void add(const Polyline& p);
    void build();

    std::vector<Vec2> segs_a_, segs_b_;
    BBox bb_;
    double cell_ = 1.0;
    int ncx_ = 0, ncy_ = 0;
    std::vector<std::vector<std::uint32_t>> buckets_;
};

}  // namespace reifflow
