#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "reifflow/errors.hpp"

namespace reifflow {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::sqrt(norm2(a)); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }
inline Vec2 normalized(Vec2 a) { return a / norm(a); }
/// Right-hand perpendicular; for a CCW curve this is the outward side.
inline Vec2 perp_right(Vec2 a) { return {a.y, -a.x}; }

struct BBox {
    Vec2 lo{1e300, 1e300};
    Vec2 hi{-1e300, -1e300};

    void expand(Vec2 p) {
        if (p.x < lo.x) lo.x = p.x;
        if (p.y < lo.y) lo.y = p.y;
        if (p.x > hi.x) hi.x = p.x;
        if (p.y > hi.y) hi.y = p.y;
    }
    bool empty() const { return lo.x > hi.x; }
    Vec2 size() const { return hi - lo; }
    double diag() const { return empty() ? 0.0 : norm(size()); }
};

BBox bbox_of(std::span<const Vec2> pts);

/// Distance from point p to segment [a,b].
double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

/// Nearest point on segment [a,b] to p.
Vec2 closest_point_on_segment(Vec2 p, Vec2 a, Vec2 b);

/// Proper or touching intersection of segments [a,b] and [c,d].
bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

/// Open or closed chain of points. The raw carrier used by clipping,
/// extraction and Hausdorff code; unlike Curve it has no validity guarantees.
struct Polyline {
    std::vector<Vec2> pts;
    bool closed = false;

    std::size_t segment_count() const {
        if (pts.size() < 2) return 0;
        return closed ? pts.size() : pts.size() - 1;
    }
    std::pair<Vec2, Vec2> segment(std::size_t i) const {
        return {pts[i], pts[(i + 1) % pts.size()]};
    }
    double length() const;
    /// Points at uniform arc-length spacing, original vertices included.
    std::vector<Vec2> sample(double spacing) const;
    /// Points at exactly uniform arc length (originals dropped); for closed
    /// chains the spacing is rounded so the loop closes evenly.
    std::vector<Vec2> resample_uniform(double spacing) const;
};

double polyline_length(std::span<const Vec2> pts, bool closed);
double signed_area(std::span<const Vec2> pts);

/// Closed simple curve with positive (counterclockwise) orientation,
/// at least 3 vertices, consecutive vertices distinct. Orientation is
/// enforced on construction; the other invariants are checked.
class Curve {
  public:
    /// Throws DomainError / TopologyError on invariant violation.
    static Curve make(std::vector<Vec2> vertices);
    /// Skips the simplicity sweep; for contours that are simple by
    /// construction (marching squares output, regular polygons).
    static Curve make_unchecked(std::vector<Vec2> vertices);

    const std::vector<Vec2>& vertices() const { return verts_; }
    std::size_t size() const { return verts_.size(); }
    Vec2 vertex(std::size_t i) const { return verts_[i % verts_.size()]; }

    double perimeter() const;
    double area() const;  // positive by orientation invariant
    double diameter() const;
    BBox bounds() const;
    bool contains(Vec2 p) const;  // even-odd rule
    Polyline as_polyline() const { return Polyline{verts_, true}; }
    /// Outward unit normal at vertex i (average of adjacent edge normals).
    Vec2 outward_normal(std::size_t i) const;
    /// Arc length from vertex 0 to vertex i along the curve.
    double arclength_to(std::size_t i) const;

    Curve translated(Vec2 d) const;
    Curve rotated(double angle, Vec2 about) const;
    Curve scaled(double s, Vec2 about) const;

  private:
    explicit Curve(std::vector<Vec2> v) : verts_(std::move(v)) {}
    std::vector<Vec2> verts_;
};

/// True if no two non-adjacent segments of the chain intersect.
bool is_simple(const Polyline& p);

/// Curve rebuilt from a uniform arc-length resampling of x.
Curve make_resampled(const Curve& x, double spacing);

/// Pieces of a polyline inside the closed disk B(center, radius); segments
/// are split at the circle exactly.
std::vector<Polyline> clip_to_ball(const Polyline& p, Vec2 center, double radius);

/// Chord of the line {point + s*dir} inside B(center,radius); empty if the
/// line misses the disk.
std::vector<Polyline> clip_line_to_ball(Vec2 point, Vec2 dir, Vec2 center, double radius);

}  // namespace reifflow
