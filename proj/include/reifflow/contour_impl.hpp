#pragma once

#include <algorithm>
#include <array>
#include <unordered_map>

namespace reifflow::detail {

// Edge key: horizontal edge (i,j) joins nodes (i,j)-(i+1,j), bit 0 clear;
// vertical edge (i,j) joins (i,j)-(i,j+1), bit 0 set.
inline std::int64_t edge_key(std::int64_t i, std::int64_t j, bool vertical, int nx) {
    return ((j * nx + i) << 1) | (vertical ? 1 : 0);
}

template <class ValueFn>
std::vector<Polyline> extract_cells(const GridSpec& grid, ValueFn&& value,
                                    const std::vector<std::int64_t>& cells, double level) {
    const int nx = grid.nx;

    std::vector<Vec2> points;
    std::unordered_map<std::int64_t, std::uint32_t> point_of_edge;
    point_of_edge.reserve(cells.size() * 2);

    auto crossing_point = [&](int i0, int j0, int i1, int j1, double s0, double s1) {
        const double t = s0 / (s0 - s1);
        const Vec2 a = grid.pos(i0, j0), b = grid.pos(i1, j1);
        return a + t * (b - a);
    };

    auto edge_point = [&](int i, int j, bool vertical, double s0, double s1) {
        const std::int64_t key = edge_key(i, j, vertical, nx);
        auto it = point_of_edge.find(key);
        if (it != point_of_edge.end()) return it->second;
        const std::uint32_t idx = static_cast<std::uint32_t>(points.size());
        points.push_back(vertical ? crossing_point(i, j, i, j + 1, s0, s1)
                                  : crossing_point(i, j, i + 1, j, s0, s1));
        point_of_edge.emplace(key, idx);
        return idx;
    };

    // adjacency, at most two links per contour point
    std::vector<std::array<std::int32_t, 2>> links;
    auto link = [&](std::uint32_t a, std::uint32_t b) {
        if (links.size() < points.size()) links.resize(points.size(), {-1, -1});
        auto attach = [&](std::uint32_t u, std::uint32_t w) {
            if (links[u][0] < 0) links[u][0] = static_cast<std::int32_t>(w);
            else if (links[u][1] < 0) links[u][1] = static_cast<std::int32_t>(w);
        };
        attach(a, b);
        attach(b, a);
    };

    for (const std::int64_t cell : cells) {
        const int i = static_cast<int>(cell % (nx - 1));
        const int j = static_cast<int>(cell / (nx - 1));
        const double s00 = value(i, j) - level;
        const double s10 = value(i + 1, j) - level;
        const double s11 = value(i + 1, j + 1) - level;
        const double s01 = value(i, j + 1) - level;
        const int mask = (s00 > 0 ? 1 : 0) | (s10 > 0 ? 2 : 0) | (s11 > 0 ? 4 : 0) |
                         (s01 > 0 ? 8 : 0);
        if (mask == 0 || mask == 15) continue;

        auto B = [&] { return edge_point(i, j, false, s00, s10); };
        auto R = [&] { return edge_point(i + 1, j, true, s10, s11); };
        auto T = [&] { return edge_point(i, j + 1, false, s01, s11); };
        auto L = [&] { return edge_point(i, j, true, s00, s01); };

        switch (mask) {
            case 1: case 14: link(L(), B()); break;
            case 2: case 13: link(B(), R()); break;
            case 3: case 12: link(L(), R()); break;
            case 4: case 11: link(R(), T()); break;
            case 6: case 9:  link(B(), T()); break;
            case 7: case 8:  link(L(), T()); break;
            case 5: {  // v00,v11 high
                const double c = 0.25 * (s00 + s10 + s11 + s01);
                if (c > 0) { link(B(), R()); link(L(), T()); }
                else       { link(L(), B()); link(R(), T()); }
                break;
            }
            case 10: {  // v10,v01 high
                const double c = 0.25 * (s00 + s10 + s11 + s01);
                if (c > 0) { link(L(), B()); link(R(), T()); }
                else       { link(B(), R()); link(L(), T()); }
                break;
            }
            default: break;
        }
    }
    if (links.size() < points.size()) links.resize(points.size(), {-1, -1});

    std::vector<Polyline> out;
    std::vector<char> used(points.size(), 0);

    auto walk = [&](std::uint32_t start, bool closed) {
        Polyline chain;
        chain.closed = closed;
        std::int32_t prev = -1;
        std::uint32_t cur = start;
        for (;;) {
            used[cur] = 1;
            if (chain.pts.empty() || norm2(points[cur] - chain.pts.back()) > 0.0)
                chain.pts.push_back(points[cur]);
            std::int32_t next = -1;
            for (const std::int32_t cand : links[cur])
                if (cand >= 0 && cand != prev && !used[static_cast<std::uint32_t>(cand)])
                    next = cand;
            if (next < 0) break;
            prev = static_cast<std::int32_t>(cur);
            cur = static_cast<std::uint32_t>(next);
        }
        if (closed && chain.pts.size() > 1 &&
            norm2(chain.pts.front() - chain.pts.back()) == 0.0)
            chain.pts.pop_back();
        return chain;
    };

    // open chains first (endpoints have a single link)
    for (std::uint32_t p = 0; p < points.size(); ++p) {
        if (used[p] || links[p][0] < 0 || links[p][1] >= 0) continue;
        Polyline chain = walk(p, false);
        if (chain.pts.size() >= 2) out.push_back(std::move(chain));
    }
    for (std::uint32_t p = 0; p < points.size(); ++p) {
        if (used[p] || links[p][0] < 0) continue;
        Polyline chain = walk(p, true);
        if (chain.pts.size() >= 3) out.push_back(std::move(chain));
    }
    return out;
}

}  // namespace reifflow::detail
