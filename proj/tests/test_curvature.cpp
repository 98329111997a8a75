#include <doctest.h>

#include <cmath>
#include <numbers>

#include "reifflow/curvature.hpp"
#include "reifflow/errors.hpp"
#include "reifflow/fractal.hpp"

using namespace reifflow;

TEST_CASE("regular polygon curvature equals 1/R") {
    const Curve c = circle_curve(2.0, 256);
    for (std::size_t i : {std::size_t{0}, std::size_t{17}, std::size_t{200}})
        CHECK(discrete_curvature(c, i) == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(sup_curvature(c) == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("collinear triples have zero curvature") {
    CHECK(menger_curvature({0, 0}, {1, 0}, {2, 0}) == 0.0);
}

TEST_CASE("duplicate neighbours are a domain error") {
    CHECK_THROWS_AS(menger_curvature({0, 0}, {0, 0}, {1, 1}), DomainError);
}

TEST_CASE("right-angle corner sampled at h=0.01 diverges like 1/h") {
    // circumradius of the isoceles right corner triple with legs h is h/sqrt(2)
    const double h = 0.01;
    const double k = menger_curvature({h, 0}, {0, 0}, {0, h});
    CHECK(k == doctest::Approx(std::sqrt(2.0) / h));
    CHECK(k >= 50.0);
}

TEST_CASE("menger estimator is exact on circles at any resolution") {
    for (int m : {16, 32, 64, 128}) {
        const Curve c = circle_curve(1.0, m);
        const double r_circ = 1.0 / discrete_curvature(c, 0);
        CHECK(std::abs(r_circ - 1.0) < 1e-10);
    }
}

TEST_CASE("sup curvature converges at second order on an ellipse") {
    // max curvature of (a,b)-ellipse is a/b^2 = 2
    auto err = [](int m) {
        return std::abs(sup_curvature(ellipse_curve(2.0, 1.0, m)) - 2.0);
    };
    const double e1 = err(256), e2 = err(512), e3 = err(1024);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.5));
    CHECK(e2 / e3 == doctest::Approx(4.0).epsilon(0.5));
}

TEST_CASE("dense ellipse sup curvature hits a/b^2") {
    CHECK(sup_curvature(ellipse_curve(2.0, 1.0, 1024)) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("ellipse with equal axes coincides with the circle") {
    const Curve e = ellipse_curve(1.0, 1.0, 256);
    const Curve c = circle_curve(1.0, 256);
    for (std::size_t i = 0; i < e.size(); ++i) {
        CHECK(std::abs(e.vertex(i).x - c.vertex(i).x) < 1e-12);
        CHECK(std::abs(e.vertex(i).y - c.vertex(i).y) < 1e-12);
    }
}

TEST_CASE("koch sup curvature grows with depth at fixed sampling") {
    // resample every depth to the same spacing; deeper corners force larger
    // circumscribed curvature
    const double spacing = 0.02;
    double prev = 0.0;
    for (int depth : {2, 3, 4, 5}) {
        const Curve k = koch_variant({std::numbers::pi / 3, depth, 1.0});
        const double s = sup_curvature_resampled(k, spacing);
        CHECK(s >= prev * 0.999);
        prev = s;
    }
    CHECK(prev > sup_curvature_resampled(koch_variant({std::numbers::pi / 3, 2, 1.0}), spacing));
}
