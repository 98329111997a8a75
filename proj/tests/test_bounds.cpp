#include <doctest.h>

#include <cmath>
#include <random>

#include "reifflow/bounds.hpp"

using namespace reifflow;

TEST_CASE("interpolation gradient bound values") {
    CHECK(interpolation_gradient_bound(3.0, 0.0) == 0.0);
    // direct arithmetic: sqrt(2*0.02 - 0.0004) / 0.98
    const double expect = std::sqrt(2.0 * 0.02 - 0.02 * 0.02) / (1.0 - 0.02);
    CHECK(expect == doctest::Approx(0.2031).epsilon(5e-4));
    CHECK(interpolation_gradient_bound(1.0, 0.02) == doctest::Approx(expect).epsilon(1e-12));
    // asymptote sqrt(2 alpha beta)
    const double v = interpolation_gradient_bound(1.0, 1e-6);
    CHECK(v == doctest::Approx(std::sqrt(2e-6)).epsilon(0.01));
}

TEST_CASE("interpolation gradient bound domain") {
    CHECK_THROWS_AS(interpolation_gradient_bound(2.0, 0.5), DomainError);
    CHECK_THROWS_AS(interpolation_gradient_bound(0.0, 0.1), DomainError);
    CHECK_THROWS_AS(interpolation_gradient_bound(1.0, -0.1), DomainError);
}

TEST_CASE("gradient bound approaches its asymptote monotonically") {
    const double alpha = 2.0;
    double prev_ratio = 1e300;
    for (const double beta : {1e-3, 1e-4, 1e-5}) {
        const double ratio =
            interpolation_gradient_bound(alpha, beta) / std::sqrt(2.0 * alpha * beta);
        CHECK(ratio < prev_ratio);
        prev_ratio = ratio;
    }
    CHECK(prev_ratio == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("curvature continuation bound values") {
    CHECK(curvature_continuation_bound(3.5, 0.0) == doctest::Approx(3.5));
    // 1 - 2*0.375 = 0.25
    CHECK(curvature_continuation_bound(1.0, 0.375) == doctest::Approx(2.0));
    // alpha = 2: the horizon is t = 1/(2 alpha^2) = 0.125; at t = 0.0625 the
    // denominator is sqrt(0.5)
    CHECK(curvature_continuation_bound(2.0, 0.0625) ==
          doctest::Approx(2.0 / std::sqrt(0.5)).epsilon(1e-12));
    CHECK_THROWS_AS(curvature_continuation_bound(2.0, 0.125), DomainError);
}

TEST_CASE("curvature continuation bound dominates alpha and grows in t") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ua(0.1, 10.0);
    for (int i = 0; i < 50; ++i) {
        const double a = ua(rng);
        const double horizon = 1.0 / (2.0 * a * a);
        double prev = 0.0;
        for (int k = 0; k < 8; ++k) {
            const double t = horizon * k / 9.0;
            const double v = curvature_continuation_bound(a, t);
            CHECK(v >= a);
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("both calculators match direct arithmetic on random inputs") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double alpha = 0.05 + 5.0 * uni(rng);
        const double beta = uni(rng) * 0.9 / alpha;
        const double direct =
            std::sqrt(2.0 * beta * alpha - alpha * alpha * beta * beta) /
            (1.0 - alpha * beta);
        CHECK(interpolation_gradient_bound(alpha, beta) ==
              doctest::Approx(direct).epsilon(1e-9));

        const double t = uni(rng) * 0.99 / (2.0 * alpha * alpha);
        const double direct2 = alpha / std::sqrt(1.0 - 2.0 * alpha * alpha * t);
        CHECK(curvature_continuation_bound(alpha, t) ==
              doctest::Approx(direct2).epsilon(1e-9));
    }
}
