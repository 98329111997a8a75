#include <doctest.h>

#include <cmath>
#include <numbers>

#include "reifflow/errors.hpp"
#include "reifflow/flatness.hpp"
#include "reifflow/fractal.hpp"
#include "reifflow/geometry.hpp"

using namespace reifflow;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("depth zero is the equilateral triangle") {
    const Curve c = koch_variant({kPi / 4, 0, 2.0});
    CHECK(c.size() == 3);
    CHECK(c.perimeter() == doctest::Approx(6.0));
}

TEST_CASE("classical segment counts 3*4^k") {
    for (int depth : {1, 2, 3, 4}) {
        const Curve c = koch_variant({kPi / 3, depth, 1.0});
        CHECK(c.size() == 3u * static_cast<std::size_t>(std::pow(4, depth)));
    }
}

TEST_CASE("classical koch perimeter grows by 4/3 per generation") {
    double prev = koch_variant({kPi / 3, 0, 1.0}).perimeter();
    for (int depth : {1, 2, 3, 4}) {
        const double per = koch_variant({kPi / 3, depth, 1.0}).perimeter();
        CHECK(per / prev == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
        prev = per;
    }
}

TEST_CASE("perimeter grows strictly with depth for every beta") {
    for (const double beta : {kPi / 12, kPi / 6, kPi / 4}) {
        double prev = 0.0;
        for (int depth : {0, 1, 2, 3}) {
            const double per = koch_variant({beta, depth, 1.0}).perimeter();
            CHECK(per > prev);
            prev = per;
        }
    }
}

TEST_CASE("simplicity sweep over beta <= pi/3, depth <= 6") {
    // Curve::make performs the segment sweep; constructing is the test
    for (const double beta : {kPi / 12, kPi / 6, kPi / 4, kPi / 3}) {
        for (int depth = 0; depth <= 6; ++depth) {
            CHECK_NOTHROW(koch_variant({beta, depth, 1.0}));
        }
    }
}

TEST_CASE("generation vertices survive into the next generation") {
    for (const double beta : {kPi / 6, kPi / 3}) {
        const Curve a = koch_variant({beta, 3, 1.0});
        const Curve b = koch_variant({beta, 4, 1.0});
        for (std::size_t i = 0; i < a.size(); ++i) {
            // refinement maps vertex i to 4i
            const Vec2 pa = a.vertex(i);
            const Vec2 pb = b.vertex(4 * i);
            CHECK(dist(pa, pb) < 1e-9);
        }
    }
}

TEST_CASE("spec invariants of KochSpec") {
    CHECK_THROWS_AS(koch_variant({0.0, 2, 1.0}), DomainError);
    CHECK_THROWS_AS(koch_variant({kPi / 2, 2, 1.0}), DomainError);
    CHECK_THROWS_AS(koch_variant({kPi / 4, 11, 1.0}), DomainError);
    CHECK_THROWS_AS(koch_variant({kPi / 4, 3, -1.0}), DomainError);
}

TEST_CASE("koch encloses positive area and is counterclockwise") {
    const Curve c = koch_variant({kPi / 4, 4, 1.0});
    CHECK(c.area() > std::sqrt(3.0) / 4.0);  // more than the base triangle
}

TEST_CASE("flatness deviations are non-decreasing in beta at a fixed scale") {
    // Probed at mid-edge vertices (pure tent structure). The three base
    // triangle corners keep their 60-degree opening for every beta, so the
    // raw certificate sup saturates near the corner value at small beta and
    // cannot distinguish softer tents.
    double prev = -1.0;
    for (const double beta : {kPi / 12, kPi / 6, kPi / 4, kPi / 3}) {
        const Curve k = koch_variant({beta, 3, 1.0});
        // base edge subdivides into 64 segments; vertex 32 is the big tent apex
        double dev = 0.0;
        for (std::size_t idx : {std::size_t{24}, std::size_t{32}, std::size_t{40}})
            dev = std::max(dev, flatness_deviation(k, k.vertex(idx), 0.1));
        CHECK(dev >= prev - 1e-3);
        prev = dev;
    }
    CHECK(prev > 0.3);  // pi/3 tents are genuinely rough
}

TEST_CASE("circle curve basics") {
    CHECK_THROWS_AS(circle_curve(1.0, 4), DomainError);
    const Curve c = circle_curve(2.0, 256);
    CHECK(c.perimeter() == doctest::Approx(4.0 * kPi).epsilon(1e-3));
}

TEST_CASE("ellipse area matches pi a b") {
    const Curve e = ellipse_curve(2.0, 1.0, 1024);
    CHECK(e.area() == doctest::Approx(2.0 * kPi).epsilon(1e-3));
}
