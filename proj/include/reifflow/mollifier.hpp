#pragma once

#include <vector>

#include "reifflow/geometry.hpp"
#include "reifflow/scalar_field.hpp"

namespace reifflow {

/// Radial bump sampled on the grid: flat (=1) on the half-radius disk, the
/// smooth transition exp(1 - 1/(1-s^2)) with s = 2|x|/r - 1 on the annulus,
/// zero outside, then normalized so the weights sum to exactly 1.
struct BumpKernel {
    double r = 0.0;          // support radius
    double h = 0.0;          // grid spacing
    int m = 0;               // cell reach; weights span [-m, m]^2
    std::vector<double> w;   // (2m+1)^2 row-major

    double weight(int dx, int dy) const {
        return w[static_cast<std::size_t>(dy + m) * (2 * m + 1) + (dx + m)];
    }
};

BumpKernel build_bump_kernel(double r, double h);

/// Indicator of the domain bounded by the curve: 1 at nodes inside (even-odd
/// rule), 0 outside. The grid must cover the curve's bounding box padded by
/// required_pad on every side.
ScalarField rasterize_indicator(const Curve& x, const GridSpec& grid,
                                double required_pad = 0.0);

/// Discrete convolution of a 0/1 field with the kernel; clamp-to-edge reads.
/// Output values lie in [0,1] and are exactly 0/1 wherever the kernel disk
/// misses/contains the domain.
ScalarField mollify(const ScalarField& field, const BumpKernel& kernel);

/// Full pipeline rasterize -> mollify -> extract half-level; returns the
/// contour with the largest enclosed area. Requires r >= 6h and
/// r < diameter/4.
Curve approximate(const Curve& x, double r, double h);

/// Every vertex moved along the outward normal (positive = outward). The
/// offset must stay inside the tubular neighborhood |d| < 1/(2 sup|A|).
Curve offset_curve(const Curve& x, double distance);

}  // namespace reifflow
