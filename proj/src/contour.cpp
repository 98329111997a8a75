#include "reifflow/contour.hpp"

#include "reifflow/errors.hpp"

namespace reifflow {

std::vector<Polyline> extract_level(const ScalarField& field, double level) {
    if (!(level > field.min_value() && level < field.max_value()))
        throw DomainError("extract_level: level must lie strictly between field min and max");

    const int nx = field.grid.nx, ny = field.grid.ny;
    std::vector<std::int64_t> cells;
    for (int j = 0; j + 1 < ny; ++j) {
        for (int i = 0; i + 1 < nx; ++i) {
            const bool h00 = field.at(i, j) > level;
            const bool h10 = field.at(i + 1, j) > level;
            const bool h11 = field.at(i + 1, j + 1) > level;
            const bool h01 = field.at(i, j + 1) > level;
            if (h00 != h10 || h10 != h11 || h11 != h01)
                cells.push_back(static_cast<std::int64_t>(j) * (nx - 1) + i);
        }
    }
    if (cells.empty()) throw DomainError("extract_level: no cells cross the level");

    auto value = [&field](int i, int j) { return field.at(i, j); };
    auto contours = detail::extract_cells(field.grid, value, cells, level);
    if (contours.empty()) throw DomainError("extract_level: no contour produced");
    return contours;
}

}  // namespace reifflow
