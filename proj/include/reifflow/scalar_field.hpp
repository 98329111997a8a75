#pragma once

#include <filesystem>
#include <vector>

#include "reifflow/geometry.hpp"

namespace reifflow {

/// Uniform node-centered grid: node (i,j) sits at origin + (i*h, j*h).
struct GridSpec {
    Vec2 origin;
    double h = 1.0;
    int nx = 0, ny = 0;

    Vec2 pos(int i, int j) const { return origin + Vec2{i * h, j * h}; }
    std::size_t count() const { return static_cast<std::size_t>(nx) * ny; }
    BBox node_bounds() const {
        return BBox{origin, origin + Vec2{(nx - 1) * h, (ny - 1) * h}};
    }
    /// Grid whose nodes cover box padded by pad on every side.
    static GridSpec covering(const BBox& box, double h, double pad);
};

struct ScalarField {
    GridSpec grid;
    std::vector<double> v;  // row-major, index j*nx + i

    ScalarField() = default;
    explicit ScalarField(const GridSpec& g, double fill = 0.0)
        : grid(g), v(g.count(), fill) {}

    double& at(int i, int j) { return v[static_cast<std::size_t>(j) * grid.nx + i]; }
    double at(int i, int j) const { return v[static_cast<std::size_t>(j) * grid.nx + i]; }
    /// Clamp-to-edge read.
    double at_clamped(int i, int j) const;

    double min_value() const;
    double max_value() const;
};

/// Text format: header "nx ny h origin_x origin_y", then row-major values.
void write_field(const std::filesystem::path& path, const ScalarField& f);
ScalarField read_field(const std::filesystem::path& path);

}  // namespace reifflow
