#include "reifflow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace reifflow {

BBox bbox_of(std::span<const Vec2> pts) {
    BBox b;
    for (Vec2 p : pts) b.expand(p);
    return b;
}

Vec2 closest_point_on_segment(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = norm2(ab);
    if (len2 == 0.0) return a;
    double t = dot(p - a, ab) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return a + t * ab;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    return dist(p, closest_point_on_segment(p, a, b));
}

namespace {

// Orientation with a relative epsilon: fractal curves carry very many
// collinear-but-disjoint segment pairs whose cross products are pure
// rounding noise, and those must classify as collinear, not as crossings.
int orientation_sign(Vec2 a, Vec2 b, Vec2 c) {
    const double v = cross(b - a, c - a);
    const double scale = (std::abs(b.x - a.x) + std::abs(b.y - a.y)) *
                         (std::abs(c.x - a.x) + std::abs(c.y - a.y));
    if (std::abs(v) <= 1e-12 * scale) return 0;
    return v > 0 ? 1 : -1;
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    const int o1 = orientation_sign(a, b, c);
    const int o2 = orientation_sign(a, b, d);
    const int o3 = orientation_sign(c, d, a);
    const int o4 = orientation_sign(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

double polyline_length(std::span<const Vec2> pts, bool closed) {
    if (pts.size() < 2) return 0.0;
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) len += dist(pts[i], pts[i + 1]);
    if (closed) len += dist(pts.back(), pts.front());
    return len;
}

double signed_area(std::span<const Vec2> pts) {
    double a = 0.0;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 p = pts[i];
        const Vec2 q = pts[(i + 1) % n];
        a += cross(p, q);
    }
    return 0.5 * a;
}

double Polyline::length() const { return polyline_length(pts, closed); }

std::vector<Vec2> Polyline::sample(double spacing) const {
    std::vector<Vec2> out;
    if (pts.empty()) return out;
    if (pts.size() == 1 || spacing <= 0.0) return pts;
    const std::size_t nseg = segment_count();
    for (std::size_t i = 0; i < nseg; ++i) {
        auto [a, b] = segment(i);
        out.push_back(a);
        const double len = dist(a, b);
        const int k = static_cast<int>(std::floor(len / spacing));
        for (int j = 1; j <= k; ++j) {
            const double t = j * spacing / len;
            if (t < 1.0) out.push_back(a + t * (b - a));
        }
    }
    if (!closed) out.push_back(pts.back());
    return out;
}

std::vector<Vec2> Polyline::resample_uniform(double spacing) const {
    std::vector<Vec2> out;
    const double total = length();
    if (pts.size() < 2 || total == 0.0 || spacing <= 0.0) return pts;

    std::size_t n_out;
    double step;
    if (closed) {
        n_out = std::max<std::size_t>(3, static_cast<std::size_t>(std::round(total / spacing)));
        step = total / static_cast<double>(n_out);
    } else {
        n_out = std::max<std::size_t>(2, static_cast<std::size_t>(std::round(total / spacing)) + 1);
        step = total / static_cast<double>(n_out - 1);
    }

    out.reserve(n_out);
    const std::size_t nseg = segment_count();
    std::size_t seg = 0;
    double seg_start = 0.0;
    auto seg_len = [&](std::size_t i) {
        auto [a, b] = segment(i);
        return dist(a, b);
    };
    double cur_len = seg_len(0);
    for (std::size_t k = 0; k < n_out; ++k) {
        double target = static_cast<double>(k) * step;
        if (!closed && k == n_out - 1) target = total;
        while (seg + 1 < nseg && target > seg_start + cur_len) {
            seg_start += cur_len;
            ++seg;
            cur_len = seg_len(seg);
        }
        auto [a, b] = segment(seg);
        const double t = cur_len == 0.0 ? 0.0 : std::clamp((target - seg_start) / cur_len, 0.0, 1.0);
        out.push_back(a + t * (b - a));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Curve

namespace {

void validate_basics(const std::vector<Vec2>& v) {
    if (v.size() < 3) throw DomainError("curve needs at least 3 vertices");
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (norm2(v[i] - v[(i + 1) % n]) == 0.0)
            throw DomainError("curve has duplicate consecutive vertices");
        if (!std::isfinite(v[i].x) || !std::isfinite(v[i].y))
            throw DomainError("curve has non-finite vertex");
    }
}

}  // namespace

Curve Curve::make(std::vector<Vec2> vertices) {
    validate_basics(vertices);
    const double a = signed_area(vertices);
    if (a == 0.0) throw DomainError("curve has zero signed area");
    if (a < 0.0) std::reverse(vertices.begin(), vertices.end());
    Curve c(std::move(vertices));
    if (!is_simple(c.as_polyline())) throw TopologyError("curve is self-intersecting");
    return c;
}

Curve Curve::make_unchecked(std::vector<Vec2> vertices) {
    validate_basics(vertices);
    const double a = signed_area(vertices);
    if (a == 0.0) throw DomainError("curve has zero signed area");
    if (a < 0.0) std::reverse(vertices.begin(), vertices.end());
    return Curve(std::move(vertices));
}

double Curve::perimeter() const { return polyline_length(verts_, true); }

double Curve::area() const { return signed_area(verts_); }

BBox Curve::bounds() const { return bbox_of(verts_); }

double Curve::diameter() const {
    // Bounding-box diagonal over-estimates the true diameter by at most
    // sqrt(2); good enough for every diameter-relative threshold here.
    return bounds().diag();
}

bool Curve::contains(Vec2 p) const {
    bool inside = false;
    const std::size_t n = verts_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = verts_[i];
        const Vec2 b = verts_[(i + 1) % n];
        if ((a.y <= p.y) != (b.y <= p.y)) {
            const double xc = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < xc) inside = !inside;
        }
    }
    return inside;
}

Vec2 Curve::outward_normal(std::size_t i) const {
    const std::size_t n = verts_.size();
    const Vec2 prev = verts_[(i + n - 1) % n];
    const Vec2 cur = verts_[i % n];
    const Vec2 next = verts_[(i + 1) % n];
    const Vec2 n0 = perp_right(normalized(cur - prev));
    const Vec2 n1 = perp_right(normalized(next - cur));
    Vec2 s = n0 + n1;
    const double len = norm(s);
    if (len < 1e-12) return n1;  // 180-degree reversal, pick one side
    return s / len;
}

double Curve::arclength_to(std::size_t i) const {
    double s = 0.0;
    for (std::size_t k = 0; k + 1 <= i && k + 1 < verts_.size(); ++k)
        s += dist(verts_[k], verts_[k + 1]);
    return s;
}

Curve Curve::translated(Vec2 d) const {
    std::vector<Vec2> v = verts_;
    for (Vec2& p : v) p += d;
    return Curve(std::move(v));
}

Curve Curve::rotated(double angle, Vec2 about) const {
    const double c = std::cos(angle), s = std::sin(angle);
    std::vector<Vec2> v = verts_;
    for (Vec2& p : v) {
        const Vec2 q = p - about;
        p = about + Vec2{c * q.x - s * q.y, s * q.x + c * q.y};
    }
    return Curve(std::move(v));
}

Curve Curve::scaled(double s, Vec2 about) const {
    std::vector<Vec2> v = verts_;
    for (Vec2& p : v) p = about + s * (p - about);
    return Curve(std::move(v));
}

Curve make_resampled(const Curve& x, double spacing) {
    std::vector<Vec2> pts = x.as_polyline().resample_uniform(spacing);
    // drop accidental duplicates from degenerate spacing
    std::vector<Vec2> clean;
    clean.reserve(pts.size());
    for (const Vec2 p : pts)
        if (clean.empty() || norm2(p - clean.back()) > 0.0) clean.push_back(p);
    while (clean.size() > 3 && norm2(clean.front() - clean.back()) == 0.0) clean.pop_back();
    return Curve::make(std::move(clean));
}

// ---------------------------------------------------------------------------
// Simplicity test, grid-bucketed so fractal generations stay near-linear.

bool is_simple(const Polyline& p) {
    const std::size_t nseg = p.segment_count();
    if (nseg < 2) return true;
    const BBox bb = bbox_of(p.pts);
    const double diag = std::max(bb.diag(), 1e-300);

    double max_len = 0.0;
    for (std::size_t i = 0; i < nseg; ++i) {
        auto [a, b] = p.segment(i);
        max_len = std::max(max_len, dist(a, b));
    }
    const double cell = std::max(max_len, diag / 256.0);
    const int ncx = std::max(1, static_cast<int>(std::ceil(bb.size().x / cell)));
    const int ncy = std::max(1, static_cast<int>(std::ceil(bb.size().y / cell)));

    auto cell_of = [&](double v, double lo, int nc) {
        int c = static_cast<int>((v - lo) / cell);
        return std::clamp(c, 0, nc - 1);
    };

    std::unordered_map<std::int64_t, std::vector<std::uint32_t>> buckets;
    buckets.reserve(nseg * 2);
    for (std::size_t i = 0; i < nseg; ++i) {
        auto [a, b] = p.segment(i);
        const int x0 = cell_of(std::min(a.x, b.x), bb.lo.x, ncx);
        const int x1 = cell_of(std::max(a.x, b.x), bb.lo.x, ncx);
        const int y0 = cell_of(std::min(a.y, b.y), bb.lo.y, ncy);
        const int y1 = cell_of(std::max(a.y, b.y), bb.lo.y, ncy);
        for (int cy = y0; cy <= y1; ++cy)
            for (int cx = x0; cx <= x1; ++cx)
                buckets[static_cast<std::int64_t>(cy) * ncx + cx].push_back(
                    static_cast<std::uint32_t>(i));
    }

    const std::size_t n = p.pts.size();
    auto adjacent = [&](std::size_t i, std::size_t j) {
        if (i == j) return true;
        const std::size_t d = (i > j) ? i - j : j - i;
        if (d == 1) return true;
        return p.closed && d == nseg - 1;
    };

    for (const auto& [key, segs] : buckets) {
        (void)key;
        for (std::size_t u = 0; u < segs.size(); ++u) {
            for (std::size_t w = u + 1; w < segs.size(); ++w) {
                const std::size_t i = segs[u], j = segs[w];
                if (adjacent(i, j)) continue;
                const Vec2 a = p.pts[i], b = p.pts[(i + 1) % n];
                const Vec2 c = p.pts[j], d = p.pts[(j + 1) % n];
                if (segments_intersect(a, b, c, d)) return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Ball clipping

namespace {

// Sub-interval [t0,t1] of [0,1] where a + t(b-a) lies in the closed disk.
bool segment_disk_interval(Vec2 a, Vec2 b, Vec2 c, double r, double& t0, double& t1) {
    const Vec2 d = b - a;
    const Vec2 f = a - c;
    const double A = norm2(d);
    const double B = 2.0 * dot(f, d);
    const double C = norm2(f) - r * r;
    if (A == 0.0) {
        if (C <= 0.0) { t0 = 0.0; t1 = 1.0; return true; }
        return false;
    }
    const double disc = B * B - 4.0 * A * C;
    if (disc < 0.0) return false;
    const double sq = std::sqrt(disc);
    t0 = std::max(0.0, (-B - sq) / (2.0 * A));
    t1 = std::min(1.0, (-B + sq) / (2.0 * A));
    return t0 <= t1;
}

}  // namespace

std::vector<Polyline> clip_to_ball(const Polyline& p, Vec2 center, double radius) {
    std::vector<Polyline> out;
    Polyline cur;
    double prev_t1 = -1.0;
    bool prev_reached_end = false;

    const std::size_t nseg = p.segment_count();
    for (std::size_t i = 0; i < nseg; ++i) {
        auto [a, b] = p.segment(i);
        double t0, t1;
        if (!segment_disk_interval(a, b, center, radius, t0, t1)) {
            if (!cur.pts.empty()) { out.push_back(std::move(cur)); cur = {}; }
            prev_reached_end = false;
            continue;
        }
        const Vec2 q0 = a + t0 * (b - a);
        const Vec2 q1 = a + t1 * (b - a);
        const bool continues = prev_reached_end && t0 == 0.0 && !cur.pts.empty();
        if (!continues) {
            if (!cur.pts.empty()) { out.push_back(std::move(cur)); cur = {}; }
            cur.pts.push_back(q0);
        }
        if (norm2(q1 - cur.pts.back()) > 0.0) cur.pts.push_back(q1);
        prev_reached_end = (t1 == 1.0);
        prev_t1 = t1;
    }
    (void)prev_t1;
    if (!cur.pts.empty()) out.push_back(std::move(cur));

    // A closed chain fully inside the ball comes out as one piece whose ends
    // meet; mark it closed so sampling does not double the joint.
    if (p.closed && out.size() == 1 && out[0].pts.size() > 2 &&
        norm2(out[0].pts.front() - out[0].pts.back()) == 0.0) {
        out[0].pts.pop_back();
        out[0].closed = true;
    }
    return out;
}

std::vector<Polyline> clip_line_to_ball(Vec2 point, Vec2 dir, Vec2 center, double radius) {
    const Vec2 u = normalized(dir);
    const double s_mid = dot(center - point, u);
    const Vec2 foot = point + s_mid * u;
    const double d2 = norm2(foot - center);
    const double r2 = radius * radius;
    if (d2 > r2) return {};
    const double half = std::sqrt(r2 - d2);
    Polyline chord;
    chord.pts = {foot - half * u, foot + half * u};
    return {chord};
}

}  // namespace reifflow
