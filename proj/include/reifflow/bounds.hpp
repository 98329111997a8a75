#pragma once

#include <cmath>

#include "reifflow/errors.hpp"

namespace reifflow {

/// Gradient of a graph squeezed between a curvature bound alpha and a
/// Hausdorff gap beta: sqrt(2*beta*alpha - alpha^2*beta^2) / (1 - alpha*beta).
/// Behaves like sqrt(2*alpha*beta) as beta -> 0.
inline double interpolation_gradient_bound(double alpha, double beta) {
    if (!(alpha > 0.0)) throw DomainError("interpolation_gradient_bound: alpha must be > 0");
    if (!(beta >= 0.0)) throw DomainError("interpolation_gradient_bound: beta must be >= 0");
    if (!(alpha * beta < 1.0))
        throw DomainError("interpolation_gradient_bound: requires alpha*beta < 1");
    const double ab = alpha * beta;
    return std::sqrt(2.0 * ab - ab * ab) / (1.0 - ab);
}

/// Curvature continuation under the flow: alpha / sqrt(1 - 2*alpha^2*t),
/// valid while 2*alpha^2*t < 1 (the blow-up horizon).
inline double curvature_continuation_bound(double alpha, double t) {
    if (!(alpha > 0.0)) throw DomainError("curvature_continuation_bound: alpha must be > 0");
    if (!(t >= 0.0)) throw DomainError("curvature_continuation_bound: t must be >= 0");
    const double s = 2.0 * alpha * alpha * t;
    if (!(s < 1.0))
        throw DomainError("curvature_continuation_bound: past blow-up horizon 2*alpha^2*t >= 1");
    return alpha / std::sqrt(1.0 - s);
}

}  // namespace reifflow
