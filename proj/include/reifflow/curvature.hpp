#pragma once

#include <cstddef>

#include "reifflow/geometry.hpp"

namespace reifflow {

/// Unsigned curvature at vertex i from the circumscribed circle of the
/// vertex and its two neighbours (Menger); exactly zero on collinear triples.
double discrete_curvature(const Curve& x, std::size_t i);

double sup_curvature(const Curve& x);

/// Menger curvature of an arbitrary triple.
double menger_curvature(Vec2 a, Vec2 b, Vec2 c);

/// sup curvature after resampling the curve to uniform spacing; the smoothing
/// knob for contours extracted from a grid, whose raw vertices carry
/// grid-scale jitter.
double sup_curvature_resampled(const Curve& x, double spacing);

}  // namespace reifflow
