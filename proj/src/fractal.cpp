#include "reifflow/fractal.hpp"

#include <cmath>
#include <numbers>

#include "reifflow/errors.hpp"

namespace reifflow {

void KochSpec::validate() const {
    if (!(beta > 0.0 && beta < std::numbers::pi / 2))
        throw DomainError("KochSpec: beta must lie in (0, pi/2)");
    if (depth < 0 || depth > 10) throw DomainError("KochSpec: depth must be in [0, 10]");
    if (!(base_side > 0.0)) throw DomainError("KochSpec: base_side must be positive");
}

Curve koch_variant(const KochSpec& spec) {
    spec.validate();

    const double cb = std::cos(spec.beta);
    const double sb = std::sin(spec.beta);

    // Counterclockwise equilateral triangle; tents are erected on the
    // outward (right-of-travel) side.
    const double s = spec.base_side;
    std::vector<Vec2> pts = {{0.0, 0.0}, {s, 0.0}, {0.5 * s, s * std::sqrt(3.0) / 2.0}};

    for (int gen = 0; gen < spec.depth; ++gen) {
        const std::size_t n = pts.size();
        if (n * 4 > 4'000'000)
            throw ResourceError("koch_variant: vertex count would exceed 4e6");
        std::vector<Vec2> next;
        next.reserve(n * 4);
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 a = pts[i];
            const Vec2 b = pts[(i + 1) % n];
            const Vec2 e = b - a;
            const double len = norm(e);
            const double piece = len / (2.0 * (1.0 + cb));
            const Vec2 u = e / len;
            const Vec2 out = perp_right(u);
            const Vec2 p1 = a + piece * u;
            const Vec2 apex = p1 + piece * (cb * u + sb * out);
            const Vec2 p2 = b - piece * u;
            next.push_back(a);
            next.push_back(p1);
            next.push_back(apex);
            next.push_back(p2);
        }
        pts = std::move(next);
    }
    return Curve::make(std::move(pts));
}

Curve circle_curve(double radius, int vertex_count) {
    if (vertex_count < 8) throw DomainError("circle_curve: vertex_count must be >= 8");
    if (!(radius > 0.0)) throw DomainError("circle_curve: radius must be positive");
    std::vector<Vec2> pts(vertex_count);
    for (int i = 0; i < vertex_count; ++i) {
        const double t = 2.0 * std::numbers::pi * i / vertex_count;
        pts[i] = {radius * std::cos(t), radius * std::sin(t)};
    }
    return Curve::make_unchecked(std::move(pts));
}

Curve ellipse_curve(double a, double b, int vertex_count) {
    if (vertex_count < 8) throw DomainError("ellipse_curve: vertex_count must be >= 8");
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("ellipse_curve: semi-axes must be positive");
    std::vector<Vec2> pts(vertex_count);
    for (int i = 0; i < vertex_count; ++i) {
        const double t = 2.0 * std::numbers::pi * i / vertex_count;
        pts[i] = {a * std::cos(t), b * std::sin(t)};
    }
    return Curve::make_unchecked(std::move(pts));
}

}  // namespace reifflow
