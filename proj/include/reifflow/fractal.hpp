#pragma once

#include "reifflow/geometry.hpp"

namespace reifflow {

/// Koch-snowflake variant: tent angle beta replaces pi/3.
struct KochSpec {
    double beta = 0.0;       // radians, in (0, pi/2)
    int depth = 0;           // iterations, <= 10
    double base_side = 1.0;  // initial equilateral triangle side

    void validate() const;
};

/// Each generation replaces every edge by four equal pieces of length
/// edge / (2(1+cos beta)): straight, tent-up, tent-down, straight, with the
/// tent pointing outward. Endpoints are fixed, so every generation's vertex
/// set survives into all later ones. beta = pi/3 reproduces the classical
/// snowflake.
Curve koch_variant(const KochSpec& spec);

/// Regular polygon inscribed in the circle, counterclockwise.
Curve circle_curve(double radius, int vertex_count);

/// Uniform-parameter sampling of the axis-aligned ellipse.
Curve ellipse_curve(double a, double b, int vertex_count);

}  // namespace reifflow
