#include "reifflow/mollifier.hpp"

#include <algorithm>
#include <cmath>

#include "reifflow/contour.hpp"
#include "reifflow/curvature.hpp"
#include "reifflow/errors.hpp"
#include "reifflow/io.hpp"
#include "reifflow/parallel.hpp"

namespace reifflow {

BumpKernel build_bump_kernel(double r, double h) {
    if (!(r > 0.0) || !(h > 0.0)) throw DomainError("build_bump_kernel: r, h must be positive");
    if (r < 6.0 * h)
        throw ResolutionError("build_bump_kernel: need r >= 6h to resolve the kernel");

    BumpKernel k;
    k.r = r;
    k.h = h;
    k.m = static_cast<int>(std::floor(r / h));
    const int side = 2 * k.m + 1;
    k.w.assign(static_cast<std::size_t>(side) * side, 0.0);

    double sum = 0.0;
    for (int dy = -k.m; dy <= k.m; ++dy) {
        for (int dx = -k.m; dx <= k.m; ++dx) {
            const double s = std::hypot(dx * h, dy * h) / r;
            double val = 0.0;
            if (s <= 0.5) {
                val = 1.0;
            } else if (s < 1.0) {
                const double q = 2.0 * s - 1.0;
                val = std::exp(1.0 - 1.0 / (1.0 - q * q));
            }
            k.w[static_cast<std::size_t>(dy + k.m) * side + (dx + k.m)] = val;
            sum += val;
        }
    }
    for (double& v : k.w) v /= sum;
    return k;
}

ScalarField rasterize_indicator(const Curve& x, const GridSpec& grid, double required_pad) {
    const BBox cb = x.bounds();
    const BBox gb = grid.node_bounds();
    const double pad_lo_x = cb.lo.x - gb.lo.x, pad_lo_y = cb.lo.y - gb.lo.y;
    const double pad_hi_x = gb.hi.x - cb.hi.x, pad_hi_y = gb.hi.y - cb.hi.y;
    const double have = std::min(std::min(pad_lo_x, pad_lo_y), std::min(pad_hi_x, pad_hi_y));
    if (have < required_pad)
        throw DomainError("rasterize_indicator: grid must pad the curve bounding box by " +
                          format_g9(required_pad) + ", has only " + format_g9(have));

    ScalarField f(grid, 0.0);
    const auto& verts = x.vertices();
    const std::size_t n = verts.size();

    parallel_for(static_cast<std::size_t>(grid.ny), [&](std::size_t jb, std::size_t je) {
        std::vector<double> xs;
        for (std::size_t j = jb; j < je; ++j) {
            const double y = grid.origin.y + static_cast<double>(j) * grid.h;
            xs.clear();
            for (std::size_t i = 0; i < n; ++i) {
                const Vec2 a = verts[i];
                const Vec2 b = verts[(i + 1) % n];
                if ((a.y <= y) != (b.y <= y))
                    xs.push_back(a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x));
            }
            if (xs.empty()) continue;
            std::sort(xs.begin(), xs.end());
            for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
                // nodes with x in [xs[k], xs[k+1])
                int i0 = static_cast<int>(std::ceil((xs[k] - grid.origin.x) / grid.h));
                int i1 = static_cast<int>(std::floor((xs[k + 1] - grid.origin.x) / grid.h));
                while (i1 >= 0 &&
                       grid.origin.x + i1 * grid.h >= xs[k + 1])
                    --i1;
                i0 = std::max(i0, 0);
                i1 = std::min(i1, grid.nx - 1);
                for (int i = i0; i <= i1; ++i)
                    f.at(i, static_cast<int>(j)) = 1.0;
            }
        }
    }, 64);
    return f;
}

namespace {

struct RowRuns {
    // [start, end) runs of ones per row, extended past the grid edge when the
    // row touches it so clamp-to-edge reads stay exact.
    std::vector<std::vector<std::pair<int, int>>> rows;
};

RowRuns build_runs(const ScalarField& f, int reach) {
    const int nx = f.grid.nx, ny = f.grid.ny;
    RowRuns rr;
    rr.rows.resize(ny);
    for (int j = 0; j < ny; ++j) {
        auto& runs = rr.rows[j];
        int i = 0;
        while (i < nx) {
            if (f.at(i, j) == 1.0) {
                int s = i;
                while (i < nx && f.at(i, j) == 1.0) ++i;
                runs.emplace_back(s, i);
            } else {
                ++i;
            }
        }
        if (!runs.empty()) {
            if (runs.front().first == 0) runs.front().first = -(reach + 1);
            if (runs.back().second == nx) runs.back().second = nx + reach + 1;
        }
    }
    return rr;
}

double convolve_node(const ScalarField& f, const BumpKernel& k, const RowRuns& rr,
                     const std::vector<double>& prefix, int i, int j) {
    const int m = k.m;
    const int side = 2 * m + 1;
    const int ny = f.grid.ny;
    double acc = 0.0;
    for (int dy = -m; dy <= m; ++dy) {
        const int row = std::clamp(j + dy, 0, ny - 1);
        const auto& runs = rr.rows[row];
        if (runs.empty()) continue;
        const double* P = prefix.data() + static_cast<std::size_t>(dy + m) * (side + 1);
        const int lo = i - m, hi = i + m;
        // runs are sorted; find the first run ending past lo
        auto it = std::upper_bound(runs.begin(), runs.end(), lo,
                                   [](int v, const std::pair<int, int>& run) {
                                       return v < run.second;
                                   });
        for (; it != runs.end() && it->first <= hi; ++it) {
            const int a = std::max(it->first, lo);
            const int b = std::min(it->second - 1, hi);
            if (a > b) continue;
            acc += P[b - lo + 1] - P[a - lo];
        }
    }
    return acc;
}

std::vector<double> kernel_row_prefix(const BumpKernel& k) {
    const int side = 2 * k.m + 1;
    std::vector<double> prefix(static_cast<std::size_t>(side) * (side + 1), 0.0);
    for (int r = 0; r < side; ++r) {
        double* P = prefix.data() + static_cast<std::size_t>(r) * (side + 1);
        P[0] = 0.0;
        for (int c = 0; c < side; ++c)
            P[c + 1] = P[c] + k.w[static_cast<std::size_t>(r) * side + c];
    }
    return prefix;
}

void check_indicator(const ScalarField& f) {
    for (const double v : f.v)
        if (v != 0.0 && v != 1.0)
            throw DomainError("mollify: field must be a 0/1 indicator");
}

}  // namespace

ScalarField mollify(const ScalarField& field, const BumpKernel& kernel) {
    check_indicator(field);
    const RowRuns rr = build_runs(field, kernel.m);
    const std::vector<double> prefix = kernel_row_prefix(kernel);

    ScalarField out(field.grid, 0.0);
    const int nx = field.grid.nx;
    parallel_for(field.grid.count(), [&](std::size_t b, std::size_t e) {
        for (std::size_t idx = b; idx < e; ++idx) {
            const int i = static_cast<int>(idx % nx);
            const int j = static_cast<int>(idx / nx);
            out.v[idx] = std::clamp(convolve_node(field, kernel, rr, prefix, i, j), 0.0, 1.0);
        }
    });
    return out;
}

Curve approximate(const Curve& x, double r, double h) {
    if (r < 6.0 * h) throw ResolutionError("approximate: need r >= 6h");
    const double diam = x.diameter();
    if (!(r < diam / 4.0)) throw DomainError("approximate: need r < diameter/4");

    const GridSpec grid = GridSpec::covering(x.bounds(), h, r + 6.0 * h);
    const ScalarField chi = rasterize_indicator(x, grid, r);
    const BumpKernel kernel = build_bump_kernel(r, h);

    // chi_r differs from chi only within distance r of the curve; convolve
    // on a stamped superset of that band and copy the indicator elsewhere
    // (exact by compact support).
    const RowRuns rr = build_runs(chi, kernel.m);
    const std::vector<double> prefix = kernel_row_prefix(kernel);
    ScalarField chi_r = chi;
    const int nx = grid.nx;
    const int reach = kernel.m + 3;
    std::vector<char> in_band(grid.count(), 0);
    const auto& verts = x.vertices();
    for (std::size_t k = 0; k < verts.size(); ++k) {
        const Vec2 a = verts[k], b = verts[(k + 1) % verts.size()];
        const int i0 = std::max(0, static_cast<int>((std::min(a.x, b.x) - grid.origin.x) / h) - reach);
        const int i1 = std::min(grid.nx - 1, static_cast<int>((std::max(a.x, b.x) - grid.origin.x) / h) + reach);
        const int j0 = std::max(0, static_cast<int>((std::min(a.y, b.y) - grid.origin.y) / h) - reach);
        const int j1 = std::min(grid.ny - 1, static_cast<int>((std::max(a.y, b.y) - grid.origin.y) / h) + reach);
        for (int j = j0; j <= j1; ++j)
            std::fill(in_band.begin() + static_cast<std::size_t>(j) * nx + i0,
                      in_band.begin() + static_cast<std::size_t>(j) * nx + i1 + 1, 1);
    }
    parallel_for(grid.count(), [&](std::size_t b, std::size_t e) {
        for (std::size_t idx = b; idx < e; ++idx) {
            if (!in_band[idx]) continue;
            const int i = static_cast<int>(idx % nx);
            const int j = static_cast<int>(idx / nx);
            chi_r.v[idx] =
                std::clamp(convolve_node(chi, kernel, rr, prefix, i, j), 0.0, 1.0);
        }
    });

    const auto contours = extract_level(chi_r, 0.5);
    const Polyline* best = nullptr;
    double best_area = 0.0;
    for (const auto& c : contours) {
        if (!c.closed || c.pts.size() < 3) continue;
        const double a = std::abs(signed_area(c.pts));
        if (a > best_area) { best_area = a; best = &c; }
    }
    if (!best) throw DomainError("approximate: pipeline produced no closed contour");

    // Uniform resampling at a few cells removes marching-squares vertex
    // jitter, whose circumscribed-circle curvature would otherwise swamp the
    // r-scale curvature of the level set. Geometry moves by O(h^2/r).
    return make_resampled(Curve::make(best->pts), 3.0 * h);
}

Curve offset_curve(const Curve& x, double distance) {
    const double sup_a = sup_curvature(x);
    if (sup_a > 0.0 && !(std::abs(distance) < 1.0 / (2.0 * sup_a)))
        throw DomainError("offset_curve: |distance| must stay below the tubular bound 1/(2 sup|A|) = " +
                          format_g9(1.0 / (2.0 * sup_a)));
    std::vector<Vec2> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = x.vertex(i) + distance * x.outward_normal(i);
    try {
        return Curve::make(std::move(out));
    } catch (const TopologyError&) {
        throw TopologyError("offset_curve: offset curve self-intersects");
    }
}

}  // namespace reifflow
