#include <doctest.h>

#include <cmath>
#include <numbers>

#include "reifflow/contour.hpp"
#include "reifflow/curvature.hpp"
#include "reifflow/errors.hpp"
#include "reifflow/fractal.hpp"
#include "reifflow/hausdorff.hpp"
#include "reifflow/mollifier.hpp"

using namespace reifflow;

namespace {
constexpr double kPi = std::numbers::pi;

ScalarField half_plane_indicator(const GridSpec& g) {
    ScalarField f(g, 0.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (g.pos(i, j).y < 0.0) f.at(i, j) = 1.0;
    return f;
}
}  // namespace

TEST_CASE("bump kernel invariants") {
    const BumpKernel k = build_bump_kernel(0.1, 0.1 / 12.0);
    double sum = 0.0;
    for (const double w : k.w) sum += w;
    CHECK(std::abs(sum - 1.0) < 1e-9);

    // radial symmetry: equidistant grid points carry equal weight
    CHECK(k.weight(3, 4) == doctest::Approx(k.weight(4, 3)).epsilon(1e-12));
    CHECK(k.weight(3, 4) == doctest::Approx(k.weight(-3, 4)).epsilon(1e-12));
    CHECK(k.weight(5, 0) == doctest::Approx(k.weight(0, -5)).epsilon(1e-12));

    // flat plateau on the half-radius disk: |x| = 5h < 0.5 r = 6h
    CHECK(k.weight(0, 0) == doctest::Approx(k.weight(5, 0)).epsilon(1e-9));
    CHECK(k.weight(0, 0) == doctest::Approx(k.weight(3, 3)).epsilon(1e-9));

    // compact support in the disk of radius r
    CHECK(k.weight(12, 1) == 0.0);
    CHECK(k.weight(9, 9) == 0.0);

    CHECK_THROWS_AS(build_bump_kernel(0.1, 0.03), ResolutionError);
}

TEST_CASE("rasterized disk area matches pi r^2") {
    const Curve c = circle_curve(1.0, 512);
    const GridSpec g = GridSpec::covering(c.bounds(), 1.0 / 256.0, 0.1);
    const ScalarField f = rasterize_indicator(c, g);
    double sum = 0.0;
    for (const double v : f.v) sum += v;
    CHECK(sum * g.h * g.h == doctest::Approx(kPi).epsilon(0.01));
}

TEST_CASE("rasterized square area matches") {
    const Curve sq = Curve::make({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
    const GridSpec g = GridSpec::covering(sq.bounds(), 1.0 / 128.0, 0.1);
    const ScalarField f = rasterize_indicator(sq, g);
    double sum = 0.0;
    for (const double v : f.v) sum += v;
    CHECK(sum * g.h * g.h == doctest::Approx(4.0).epsilon(0.01));
}

TEST_CASE("rasterized koch area matches shoelace") {
    const Curve k = koch_variant({kPi / 4, 4, 1.0});
    const GridSpec g = GridSpec::covering(k.bounds(), 1.0 / 256.0, 0.05);
    const ScalarField f = rasterize_indicator(k, g);
    double sum = 0.0;
    for (const double v : f.v) sum += v;
    CHECK(sum * g.h * g.h == doctest::Approx(k.area()).epsilon(0.01));
}

TEST_CASE("rasterize rejects grids without the requested padding") {
    const Curve c = circle_curve(1.0, 64);
    const GridSpec g = GridSpec::covering(c.bounds(), 1.0 / 64.0, 0.01);
    CHECK_THROWS_AS(rasterize_indicator(c, g, 0.25), DomainError);
}

TEST_CASE("mollified half plane is exactly one half at the interface") {
    // rows staggered to straddle y = 0; the interpolated interface value is
    // the mean of the two adjacent rows and radial symmetry makes it 1/2
    const double h = 1.0 / 64.0;
    const GridSpec g{{-1.0, -1.0 + h / 2.0}, h, 129, 128};
    const ScalarField chi = half_plane_indicator(g);
    const ScalarField out = mollify(chi, build_bump_kernel(0.125, h));
    const int jlo = 63, jhi = 64;
    CHECK(g.pos(0, jlo).y == doctest::Approx(-h / 2.0));
    CHECK(g.pos(0, jhi).y == doctest::Approx(h / 2.0));
    for (int i : {20, 64, 100}) {
        const double mid = 0.5 * (out.at(i, jlo) + out.at(i, jhi));
        CHECK(mid == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(out.at(i, jlo) > 0.5);
        CHECK(out.at(i, jhi) < 0.5);
    }
}

TEST_CASE("mollified full plane stays one") {
    const GridSpec g{{0, 0}, 0.02, 80, 80};
    const ScalarField ones(g, 1.0);
    const ScalarField out = mollify(ones, build_bump_kernel(0.15, g.h));
    for (const double v : out.v) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mollified disk is one at the center") {
    const Curve c = circle_curve(1.0, 256);
    const GridSpec g = GridSpec::covering(c.bounds(), 1.0 / 64.0, 0.2);
    const ScalarField chi = rasterize_indicator(c, g);
    const ScalarField out = mollify(chi, build_bump_kernel(0.1, g.h));
    const int ci = static_cast<int>(std::round((0.0 - g.origin.x) / g.h));
    const int cj = static_cast<int>(std::round((0.0 - g.origin.y) / g.h));
    CHECK(out.at(ci, cj) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mollification is monotone in the domain") {
    const GridSpec g{{-1, -1}, 0.02, 101, 101};
    const Curve small = circle_curve(0.4, 128);
    const Curve big = circle_curve(0.7, 128);
    const ScalarField fs = rasterize_indicator(small, g);
    const ScalarField fb = rasterize_indicator(big, g);
    const BumpKernel k = build_bump_kernel(0.15, g.h);
    const ScalarField ms = mollify(fs, k);
    const ScalarField mb = mollify(fb, k);
    for (std::size_t i = 0; i < ms.v.size(); ++i) CHECK(ms.v[i] <= mb.v[i] + 1e-15);
}

TEST_CASE("mollification commutes with whole-cell grid translation bit-exactly") {
    // center keeps vertices off grid nodes; ties at exact node hits are
    // legitimately origin-dependent
    const Curve c = circle_curve(0.5, 128).translated({0.0103, 0.0071});
    const GridSpec g1{{-1.0, -1.0}, 0.02, 101, 101};
    const GridSpec g2{{-1.0 - 3 * 0.02, -1.0 - 5 * 0.02}, 0.02, 107, 109};
    const BumpKernel k = build_bump_kernel(0.12, 0.02);
    const ScalarField m1 = mollify(rasterize_indicator(c, g1), k);
    const ScalarField m2 = mollify(rasterize_indicator(c, g2), k);
    // compare the overlapping interior where both kernels see the same data
    for (int j = 10; j < 90; ++j)
        for (int i = 10; i < 90; ++i)
            CHECK(m1.at(i, j) == m2.at(i + 3, j + 5));
}

TEST_CASE("extract_level of the mollified half plane sits on y=0") {
    const double h = 1.0 / 64.0;
    const GridSpec g{{-1.0, -1.0 + h / 2.0}, h, 129, 128};
    const ScalarField out = mollify(half_plane_indicator(g), build_bump_kernel(0.125, h));
    const auto contours = extract_level(out, 0.5);
    REQUIRE(contours.size() == 1);
    CHECK_FALSE(contours[0].closed);
    for (const Vec2 p : contours[0].pts) CHECK(std::abs(p.y) < h);
}

TEST_CASE("extract_level needs a level strictly inside the range") {
    const GridSpec g{{0, 0}, 0.1, 8, 8};
    const ScalarField f(g, 0.25);
    CHECK_THROWS_AS(extract_level(f, 0.5), DomainError);
}

TEST_CASE("two mollified disks give two contours") {
    const GridSpec g{{-2.2, -1.2}, 0.02, 221, 121};
    ScalarField chi(g, 0.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const Vec2 p = g.pos(i, j);
            if (dist(p, {-1.1, 0}) < 0.5 || dist(p, {1.1, 0}) < 0.5) chi.at(i, j) = 1.0;
        }
    const ScalarField out = mollify(chi, build_bump_kernel(0.15, g.h));
    const auto contours = extract_level(out, 0.5);
    CHECK(contours.size() == 2);
}

TEST_CASE("approximate reproduces a circle closely") {
    const Curve c = circle_curve(1.0, 1024);
    const Curve a = approximate(c, 0.1, 1.0 / 512.0);
    CHECK(hausdorff_distance(a, c) < 0.01);
    CHECK(sup_curvature_resampled(a, 0.1 / 6.0) < 2.0);
}

TEST_CASE("approximate of a convex curve is convex") {
    const Curve e = ellipse_curve(1.0, 0.6, 512);
    const Curve a = approximate(e, 0.08, 0.08 / 14.0);
    const auto& pts = a.vertices();
    const std::size_t n = pts.size();
    int negatives = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 u = pts[(i + 1) % n] - pts[i];
        const Vec2 v = pts[(i + 2) % n] - pts[(i + 1) % n];
        // extraction noise allowance: turning angles above -0.6 degrees
        if (cross(u, v) / (norm(u) * norm(v)) < -0.01) ++negatives;
    }
    CHECK(negatives == 0);
}

TEST_CASE("approximation distance decreases as r shrinks") {
    const Curve k = koch_variant({kPi / 4, 4, 1.0});
    const double h = k.diameter() / 512.0;
    double prev = 1e300;
    for (const double mult : {8.0, 4.0, 2.0}) {
        const double r = mult * 6.0 * h;
        const double d = hausdorff_distance(approximate(k, r, h), k);
        CHECK(d < prev);
        prev = d;
    }
}

TEST_CASE("approximate validates its scale window") {
    const Curve c = circle_curve(1.0, 256);
    CHECK_THROWS_AS(approximate(c, 0.01, 0.005), ResolutionError);
    CHECK_THROWS_AS(approximate(c, 1.0, 0.01), DomainError);
}

TEST_CASE("offset circle changes radius by the offset") {
    const Curve c = circle_curve(1.0, 512);
    const double h = 1.0 / 256.0;
    const Curve out = offset_curve(c, 0.1);
    const Curve in = offset_curve(c, -0.1);
    CHECK(hausdorff_distance(out, circle_curve(1.1, 512)) < 2.0 * h);
    CHECK(hausdorff_distance(in, circle_curve(0.9, 512)) < 2.0 * h);
}

TEST_CASE("offset outside the tubular bound is rejected") {
    const Curve c = circle_curve(1.0, 512);  // sup curvature 1
    CHECK_THROWS_AS(offset_curve(c, 0.6), DomainError);
    CHECK_THROWS_AS(offset_curve(c, -0.55), DomainError);
}

TEST_CASE("offset round trip returns to the curve") {
    const Curve c = ellipse_curve(1.0, 0.7, 512);
    const double h = 0.005;
    const Curve back = offset_curve(offset_curve(c, 0.1), -0.1);
    CHECK(hausdorff_distance(back, c) < 3.0 * h);
}

TEST_CASE("barrier offsets of a smoothed koch avoid the fractal") {
    // The mollified curvature is dominated by the base-triangle corners
    // (sup|A| ~ 1.6/r for every beta), so 10 sin(beta) r fits inside the
    // tubular bound only for small tent angles. At those corners the
    // half-level also cuts ~0.45 r inside the 60-degree wedge, more than any
    // admissible offset, so disjointness is asserted on the tent structure
    // away from the three base vertices.
    const double beta = kPi / 180.0;
    const Curve k = koch_variant({beta, 4, 1.0});
    const double r = 0.06;
    const Curve xr = approximate(k, r, r / 14.0);
    const double off = 10.0 * std::sin(beta) * r;
    const Curve plus = offset_curve(xr, off);
    const Curve minus = offset_curve(xr, -off);

    const Vec2 corners[] = {{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}};
    auto near_corner = [&](Vec2 p) {
        for (const Vec2 c : corners)
            if (dist(p, c) < 1.5 * r) return true;
        return false;
    };
    auto crosses_away_from_corners = [&](const Curve& a) {
        const auto& av = a.vertices();
        const auto& kv = k.vertices();
        for (std::size_t i = 0; i < av.size(); ++i) {
            if (near_corner(av[i])) continue;
            for (std::size_t j = 0; j < kv.size(); ++j)
                if (segments_intersect(av[i], av[(i + 1) % av.size()], kv[j],
                                       kv[(j + 1) % kv.size()]))
                    return true;
        }
        return false;
    };
    CHECK_FALSE(crosses_away_from_corners(plus));
    CHECK_FALSE(crosses_away_from_corners(minus));

    // nesting: minus strictly inside plus
    for (std::size_t i = 0; i < minus.size(); i += 7) CHECK(plus.contains(minus.vertex(i)));
    // mid-edge orientation: plus outside the fractal, minus inside
    Vec2 mid{0.5, 0.0};
    std::size_t pi_idx = 0, mi_idx = 0;
    double pb = 1e300, mb = 1e300;
    for (std::size_t i = 0; i < plus.size(); ++i)
        if (dist(plus.vertex(i), mid) < pb) { pb = dist(plus.vertex(i), mid); pi_idx = i; }
    for (std::size_t i = 0; i < minus.size(); ++i)
        if (dist(minus.vertex(i), mid) < mb) { mb = dist(minus.vertex(i), mid); mi_idx = i; }
    CHECK_FALSE(k.contains(plus.vertex(pi_idx)));
    CHECK(k.contains(minus.vertex(mi_idx)));
}
