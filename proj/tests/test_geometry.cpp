#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "reifflow/errors.hpp"
#include "reifflow/fractal.hpp"
#include "reifflow/geometry.hpp"
#include "reifflow/segment_grid.hpp"

using namespace reifflow;

TEST_CASE("curve construction enforces invariants") {
    CHECK_THROWS_AS(Curve::make({{0, 0}, {1, 0}}), DomainError);
    CHECK_THROWS_AS(Curve::make({{0, 0}, {0, 0}, {1, 1}}), DomainError);
    // five-point star drawn without lifting the pen
    CHECK_THROWS_AS(Curve::make({{0, 0}, {2, 3}, {4, 0}, {0, 2}, {4, 2}}), TopologyError);
    // collinear degenerate
    CHECK_THROWS_AS(Curve::make({{0, 0}, {1, 0}, {2, 0}}), DomainError);
}

TEST_CASE("curve orientation is forced counterclockwise") {
    const Curve cw = Curve::make({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
    CHECK(cw.area() == doctest::Approx(1.0));
    CHECK(signed_area(cw.vertices()) > 0.0);
}

TEST_CASE("outward normal points away from the region") {
    const Curve sq = Curve::make({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
    for (std::size_t i = 0; i < sq.size(); ++i) {
        const Vec2 p = sq.vertex(i) + 0.05 * sq.outward_normal(i);
        CHECK_FALSE(sq.contains(p));
        const Vec2 q = sq.vertex(i) - 0.05 * sq.outward_normal(i);
        CHECK(sq.contains(q));
    }
}

TEST_CASE("contains uses the even-odd rule") {
    const Curve sq = Curve::make({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(sq.contains({0.5, 0.5}));
    CHECK_FALSE(sq.contains({1.5, 0.5}));
    CHECK_FALSE(sq.contains({-0.2, 0.5}));
}

TEST_CASE("uniform resampling spacing and closure") {
    const Curve c = circle_curve(1.0, 64);
    const auto pts = c.as_polyline().resample_uniform(0.05);
    const double per = polyline_length(pts, true);
    CHECK(per == doctest::Approx(c.perimeter()).epsilon(0.01));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double d = dist(pts[i], pts[(i + 1) % pts.size()]);
        CHECK(d == doctest::Approx(per / pts.size()).epsilon(0.05));
    }
}

TEST_CASE("clip_to_ball splits segments exactly on the circle") {
    Polyline horizontal;
    horizontal.pts = {{-5, 0}, {5, 0}};
    const auto pieces = clip_to_ball(horizontal, {0, 0}, 1.0);
    REQUIRE(pieces.size() == 1);
    REQUIRE(pieces[0].pts.size() == 2);
    CHECK(pieces[0].pts[0].x == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(pieces[0].pts[1].x == doctest::Approx(1.0).epsilon(1e-12));

    const auto none = clip_to_ball(horizontal, {0, 10}, 1.0);
    CHECK(none.empty());
}

TEST_CASE("clip_to_ball keeps disjoint crossings separate") {
    // wide vee: both legs cross the disk, the apex stays outside
    Polyline vee;
    vee.pts = {{-2, -0.8}, {0, 1.4}, {2, -0.8}};
    const auto two = clip_to_ball(vee, {0, 0}, 1.0);
    CHECK(two.size() == 2);
}

TEST_CASE("segment grid distance agrees with brute force") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    Polyline p;
    for (int i = 0; i < 40; ++i) p.pts.push_back({uni(rng), uni(rng)});
    const SegmentGrid sg(p);
    for (int q = 0; q < 200; ++q) {
        const Vec2 pt{uni(rng) * 2.0, uni(rng) * 2.0};
        double best = 1e300;
        for (std::size_t i = 0; i + 1 < p.pts.size(); ++i)
            best = std::min(best, point_segment_distance(pt, p.pts[i], p.pts[i + 1]));
        CHECK(sg.distance(pt) == doctest::Approx(best).epsilon(1e-12));
    }
}

TEST_CASE("is_simple flags crossings and accepts polygons") {
    Polyline cross;
    cross.pts = {{0, 0}, {2, 2}, {2, 0}, {0, 2}};
    cross.closed = true;
    CHECK_FALSE(is_simple(cross));
    CHECK(is_simple(circle_curve(1.0, 128).as_polyline()));
}
