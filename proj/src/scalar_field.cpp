#include "reifflow/scalar_field.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "reifflow/errors.hpp"
#include "reifflow/io.hpp"

namespace reifflow {

GridSpec GridSpec::covering(const BBox& box, double h, double pad) {
    if (!(h > 0.0)) throw DomainError("GridSpec: spacing must be positive");
    if (box.empty()) throw DomainError("GridSpec: empty box");
    GridSpec g;
    g.h = h;
    g.origin = box.lo - Vec2{pad, pad};
    g.nx = static_cast<int>(std::ceil((box.size().x + 2.0 * pad) / h)) + 1;
    g.ny = static_cast<int>(std::ceil((box.size().y + 2.0 * pad) / h)) + 1;
    return g;
}

double ScalarField::at_clamped(int i, int j) const {
    i = std::clamp(i, 0, grid.nx - 1);
    j = std::clamp(j, 0, grid.ny - 1);
    return at(i, j);
}

double ScalarField::min_value() const {
    return *std::min_element(v.begin(), v.end());
}

double ScalarField::max_value() const {
    return *std::max_element(v.begin(), v.end());
}

void write_field(const std::filesystem::path& path, const ScalarField& f) {
    std::ostringstream os;
    os << f.grid.nx << ' ' << f.grid.ny << ' ' << format_g17(f.grid.h) << ' '
       << format_g17(f.grid.origin.x) << ' ' << format_g17(f.grid.origin.y) << '\n';
    for (int j = 0; j < f.grid.ny; ++j) {
        for (int i = 0; i < f.grid.nx; ++i) {
            if (i) os << ' ';
            os << format_g17(f.at(i, j));
        }
        os << '\n';
    }
    write_text_file(path, os.str());
}

ScalarField read_field(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open field file: " + path.string());
    GridSpec g;
    if (!(in >> g.nx >> g.ny >> g.h >> g.origin.x >> g.origin.y))
        throw IoError("bad field header: " + path.string());
    if (g.nx <= 0 || g.ny <= 0 || !(g.h > 0.0))
        throw IoError("invalid field dimensions: " + path.string());
    ScalarField f(g);
    for (double& x : f.v)
        if (!(in >> x)) throw IoError("truncated field file: " + path.string());
    return f;
}

}  // namespace reifflow
