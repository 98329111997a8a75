#pragma once

#include <cstdint>
#include <vector>

#include "reifflow/scalar_field.hpp"

namespace reifflow {

/// Marching-squares contours of {value == level} with linear interpolation
/// along grid edges; saddle cells are resolved by the cell-center average.
/// Closed loops come back with closed=true; chains that leave the grid stay
/// open. Throws DomainError when no cell crosses the level.
std::vector<Polyline> extract_level(const ScalarField& field, double level);

namespace detail {

// Core shared by the full-grid path and the narrow-band path: cells is the
// list of flattened cell indices (j*(nx-1)+i) that may cross the level.
template <class ValueFn>
std::vector<Polyline> extract_cells(const GridSpec& grid, ValueFn&& value,
                                    const std::vector<std::int64_t>& cells, double level);

}  // namespace detail

}  // namespace reifflow

#include "reifflow/contour_impl.hpp"
