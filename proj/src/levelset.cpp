#include "reifflow/levelset.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "reifflow/contour.hpp"
#include "reifflow/curvature.hpp"
#include "reifflow/errors.hpp"
#include "reifflow/hausdorff.hpp"
#include "reifflow/parallel.hpp"
#include "reifflow/segment_grid.hpp"

namespace reifflow {

namespace {

constexpr double kGradEps2 = 1e-16;  // |grad|_eps^2 = |grad|^2 + (1e-8)^2

// Curvature-times-gradient term from the nine neighbours.
inline double mcf_rhs(double c, double e, double w, double n, double s, double ne,
                      double nw, double se, double sw, double inv_h, double inv_h2) {
    const double px = 0.5 * (e - w) * inv_h;
    const double py = 0.5 * (n - s) * inv_h;
    const double pxx = (e - 2.0 * c + w) * inv_h2;
    const double pyy = (n - 2.0 * c + s) * inv_h2;
    const double pxy = 0.25 * (ne - nw - se + sw) * inv_h2;
    const double num = pxx * py * py - 2.0 * px * py * pxy + pyy * px * px;
    return num / (px * px + py * py + kGradEps2);
}

std::vector<char> inside_mask(const std::vector<Polyline>& ps, const GridSpec& grid) {
    std::vector<char> mask(grid.count(), 0);
    parallel_for(static_cast<std::size_t>(grid.ny), [&](std::size_t jb, std::size_t je) {
        std::vector<double> xs;
        for (std::size_t j = jb; j < je; ++j) {
            const double y = grid.origin.y + static_cast<double>(j) * grid.h;
            xs.clear();
            for (const auto& p : ps) {
                const std::size_t nseg = p.segment_count();
                for (std::size_t k = 0; k < nseg; ++k) {
                    auto [a, b] = p.segment(k);
                    if ((a.y <= y) != (b.y <= y))
                        xs.push_back(a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x));
                }
            }
            if (xs.empty()) continue;
            std::sort(xs.begin(), xs.end());
            char* row = mask.data() + j * grid.nx;
            for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
                int i0 = static_cast<int>(std::ceil((xs[k] - grid.origin.x) / grid.h));
                int i1 = static_cast<int>(std::floor((xs[k + 1] - grid.origin.x) / grid.h));
                while (i1 >= 0 && grid.origin.x + i1 * grid.h >= xs[k + 1]) --i1;
                i0 = std::max(i0, 0);
                i1 = std::min(i1, grid.nx - 1);
                for (int i = i0; i <= i1; ++i) row[i] = 1;
            }
        }
    }, 64);
    return mask;
}

}  // namespace

ScalarField signed_distance_to_polylines(const std::vector<Polyline>& ps,
                                         const GridSpec& grid) {
    const SegmentGrid sg(ps);
    if (sg.empty()) throw DomainError("signed_distance: no geometry");
    const std::vector<char> mask = inside_mask(ps, grid);
    ScalarField f(grid);
    parallel_for(grid.count(), [&](std::size_t b, std::size_t e) {
        for (std::size_t idx = b; idx < e; ++idx) {
            const int i = static_cast<int>(idx % grid.nx);
            const int j = static_cast<int>(idx / grid.nx);
            const double d = sg.distance(grid.pos(i, j));
            f.v[idx] = mask[idx] ? -d : d;
        }
    });
    return f;
}

ScalarField signed_distance(const Curve& x, const GridSpec& grid) {
    const BBox cb = x.bounds();
    const BBox gb = grid.node_bounds();
    if (cb.lo.x < gb.lo.x || cb.lo.y < gb.lo.y || cb.hi.x > gb.hi.x || cb.hi.y > gb.hi.y)
        throw DomainError("signed_distance: grid does not cover the curve");
    return signed_distance_to_polylines({x.as_polyline()}, grid);
}

LevelSetState make_level_set_state(const Curve& x, const GridSpec& grid) {
    return LevelSetState{signed_distance(x, grid), 0.0, 0};
}

void mcf_step(LevelSetState& state, double dt) {
    const GridSpec& g = state.phi.grid;
    const double h = g.h;
    if (!(dt > 0.0) || dt > 0.25 * h * h + 1e-18 * h * h)
        throw DomainError("mcf_step: stability requires 0 < dt <= 0.25 h^2");

    const std::vector<double>& p = state.phi.v;
    std::vector<double> out(p.size());
    const int nx = g.nx, ny = g.ny;
    const double inv_h = 1.0 / h, inv_h2 = inv_h * inv_h;

    std::atomic<bool> finite{true};
    parallel_for(g.count(), [&](std::size_t b, std::size_t e) {
        bool ok = true;
        auto at = [&](int i, int j) {
            i = std::clamp(i, 0, nx - 1);
            j = std::clamp(j, 0, ny - 1);
            return p[static_cast<std::size_t>(j) * nx + i];
        };
        for (std::size_t idx = b; idx < e; ++idx) {
            const int i = static_cast<int>(idx % nx);
            const int j = static_cast<int>(idx / nx);
            const double v =
                p[idx] + dt * mcf_rhs(p[idx], at(i + 1, j), at(i - 1, j), at(i, j + 1),
                                      at(i, j - 1), at(i + 1, j + 1), at(i - 1, j + 1),
                                      at(i + 1, j - 1), at(i - 1, j - 1), inv_h, inv_h2);
            ok = ok && std::isfinite(v);
            out[idx] = v;
        }
        if (!ok) finite.store(false, std::memory_order_relaxed);
    });
    if (!finite.load())
        throw BlowupError("mcf_step: non-finite values at t = " + std::to_string(state.t) +
                          ", dt = " + std::to_string(dt));
    state.phi.v = std::move(out);
    state.t += dt;
    state.steps_since_reinit += 1;
}

void reinitialize(LevelSetState& state) {
    std::vector<Polyline> contours;
    try {
        contours = extract_level(state.phi, 0.0);
    } catch (const DomainError&) {
        throw ExtinctError("reinitialize: zero set is empty");
    }
    state.phi = signed_distance_to_polylines(contours, state.phi.grid);
    state.steps_since_reinit = 0;
}

// ---------------------------------------------------------------------------
// Narrow-band engine. Full-grid storage, but stepping and redistancing touch
// only nodes near the zero set; values further than kKnownWidth*h are frozen
// at +-cap with the correct sign, which the stencil never propagates back to
// the zero set within one reinit cycle.

namespace {

constexpr double kUpdateWidth = 6.0;
constexpr double kKnownWidth = 10.0;

class BandedSolver {
  public:
    BandedSolver(const Curve& x, const GridSpec& grid, double dt, int reinit_every)
        : grid_(grid), h_(grid.h), dt_(dt), reinit_every_(reinit_every) {
        stamp_.assign(grid_.count(), 0);
        initialize(x);
    }

    double t() const { return t_; }
    bool extinct() const { return extinct_; }

    void advance_to(double target) {
        while (!extinct_ && t_ < target - 1e-14 * std::max(1.0, target)) {
            if (steps_since_reinit_ >= reinit_every_) redistance();
            if (extinct_) break;
            const double dt = std::min(dt_, target - t_);
            step(dt);
        }
    }

    std::vector<Polyline> extract_contours() {
        const auto cells = crossing_cells();
        if (cells.empty()) return {};
        auto value = [this](int i, int j) {
            return phi_[static_cast<std::size_t>(j) * grid_.nx + i];
        };
        return detail::extract_cells(grid_, value, cells, 0.0);
    }

    void redistance() {
        const auto contours = extract_contours();
        if (contours.empty()) {
            extinct_ = true;
            extinction_time_ = t_;
            return;
        }
        const SegmentGrid sg(contours);
        const double known = kKnownWidth * h_;
        const double cap = known;

        // stamp nodes near the new zero set
        ++version_;
        std::vector<std::size_t> near;
        const int reach = static_cast<int>(std::ceil(kKnownWidth)) + 1;
        for (std::size_t si = 0; si < sg.segment_count(); ++si) {
            const Vec2 a = sg.segment_a(si), b = sg.segment_b(si);
            const int i0 = std::max(0, static_cast<int>((std::min(a.x, b.x) - grid_.origin.x) / h_) - reach);
            const int i1 = std::min(grid_.nx - 1, static_cast<int>((std::max(a.x, b.x) - grid_.origin.x) / h_) + reach);
            const int j0 = std::max(0, static_cast<int>((std::min(a.y, b.y) - grid_.origin.y) / h_) - reach);
            const int j1 = std::min(grid_.ny - 1, static_cast<int>((std::max(a.y, b.y) - grid_.origin.y) / h_) + reach);
            for (int j = j0; j <= j1; ++j) {
                for (int i = i0; i <= i1; ++i) {
                    const std::size_t idx = static_cast<std::size_t>(j) * grid_.nx + i;
                    if (stamp_[idx] == version_) continue;
                    stamp_[idx] = version_;
                    near.push_back(idx);
                }
            }
        }
        std::sort(near.begin(), near.end());

        // previously known nodes that fell out of the stamp get frozen at cap
        for (const std::size_t idx : known_) {
            if (stamp_[idx] != version_)
                phi_[idx] = phi_[idx] > 0.0 ? cap : -cap;
        }

        std::vector<double> dist(near.size());
        parallel_for(near.size(), [&](std::size_t b, std::size_t e) {
            for (std::size_t k = b; k < e; ++k) {
                const std::size_t idx = near[k];
                const int i = static_cast<int>(idx % grid_.nx);
                const int j = static_cast<int>(idx / grid_.nx);
                dist[k] = sg.distance(grid_.pos(i, j));
            }
        });

        known_.clear();
        band_.clear();
        bool finite = true;
        for (std::size_t k = 0; k < near.size(); ++k) {
            const std::size_t idx = near[k];
            finite = finite && std::isfinite(phi_[idx]);
            const double d = std::min(dist[k], cap);
            phi_[idx] = phi_[idx] > 0.0 ? d : -d;
            if (d < known) known_.push_back(idx);
            if (d <= kUpdateWidth * h_) band_.push_back(idx);
        }
        if (!finite)
            throw BlowupError("level-set solver: non-finite phi at t = " + std::to_string(t_));
        steps_since_reinit_ = 0;
    }

    double extinction_time() const { return extinction_time_; }

  private:
    // Exact signed distance near the curve, +-cap elsewhere; sign from the
    // even-odd mask so no full-grid nearest-segment sweep is ever needed.
    void initialize(const Curve& x) {
        const double cap = kKnownWidth * h_;
        const std::vector<char> inside = inside_mask({x.as_polyline()}, grid_);
        phi_.resize(grid_.count());
        for (std::size_t idx = 0; idx < phi_.size(); ++idx)
            phi_[idx] = inside[idx] ? -cap : cap;

        const SegmentGrid sg(x.as_polyline());
        ++version_;
        std::vector<std::size_t> near;
        const int reach = static_cast<int>(std::ceil(kKnownWidth)) + 1;
        const auto& verts = x.vertices();
        for (std::size_t k = 0; k < verts.size(); ++k) {
            const Vec2 a = verts[k], b = verts[(k + 1) % verts.size()];
            const int i0 = std::max(0, static_cast<int>((std::min(a.x, b.x) - grid_.origin.x) / h_) - reach);
            const int i1 = std::min(grid_.nx - 1, static_cast<int>((std::max(a.x, b.x) - grid_.origin.x) / h_) + reach);
            const int j0 = std::max(0, static_cast<int>((std::min(a.y, b.y) - grid_.origin.y) / h_) - reach);
            const int j1 = std::min(grid_.ny - 1, static_cast<int>((std::max(a.y, b.y) - grid_.origin.y) / h_) + reach);
            for (int j = j0; j <= j1; ++j) {
                for (int i = i0; i <= i1; ++i) {
                    const std::size_t idx = static_cast<std::size_t>(j) * grid_.nx + i;
                    if (stamp_[idx] == version_) continue;
                    stamp_[idx] = version_;
                    near.push_back(idx);
                }
            }
        }
        std::sort(near.begin(), near.end());
        std::vector<double> dist_vals(near.size());
        parallel_for(near.size(), [&](std::size_t b, std::size_t e) {
            for (std::size_t k = b; k < e; ++k) {
                const std::size_t idx = near[k];
                const int i = static_cast<int>(idx % grid_.nx);
                const int j = static_cast<int>(idx / grid_.nx);
                dist_vals[k] = sg.distance(grid_.pos(i, j));
            }
        });
        band_.clear();
        known_.clear();
        for (std::size_t k = 0; k < near.size(); ++k) {
            const std::size_t idx = near[k];
            const double d = std::min(dist_vals[k], cap);
            phi_[idx] = inside[idx] ? -d : d;
            if (d < cap) known_.push_back(idx);
            if (d <= kUpdateWidth * h_) band_.push_back(idx);
        }
    }

    std::vector<std::int64_t> crossing_cells() const {
        std::vector<std::int64_t> cells;
        const int nx = grid_.nx, ny = grid_.ny;
        for (const std::size_t idx : band_) {
            const int i = static_cast<int>(idx % nx);
            const int j = static_cast<int>(idx / nx);
            if (i + 1 >= nx || j + 1 >= ny) continue;
            const bool h00 = phi_[idx] > 0.0;
            const bool h10 = phi_[idx + 1] > 0.0;
            const bool h01 = phi_[idx + nx] > 0.0;
            const bool h11 = phi_[idx + nx + 1] > 0.0;
            if (h00 != h10 || h10 != h11 || h11 != h01)
                cells.push_back(static_cast<std::int64_t>(j) * (nx - 1) + i);
        }
        return cells;
    }

    void step(double dt) {
        const int nx = grid_.nx, ny = grid_.ny;
        const double inv_h = 1.0 / h_, inv_h2 = inv_h * inv_h;
        if (update_.size() < band_.size()) update_.resize(band_.size());
        const double* p = phi_.data();
        parallel_for(band_.size(), [&](std::size_t b, std::size_t e) {
            for (std::size_t k = b; k < e; ++k) {
                const std::size_t idx = band_[k];
                const int i = static_cast<int>(idx % nx);
                const int j = static_cast<int>(idx / nx);
                auto at = [&](int ii, int jj) {
                    ii = std::clamp(ii, 0, nx - 1);
                    jj = std::clamp(jj, 0, ny - 1);
                    return p[static_cast<std::size_t>(jj) * nx + ii];
                };
                update_[k] = p[idx] + dt * mcf_rhs(p[idx], at(i + 1, j), at(i - 1, j),
                                                   at(i, j + 1), at(i, j - 1),
                                                   at(i + 1, j + 1), at(i - 1, j + 1),
                                                   at(i + 1, j - 1), at(i - 1, j - 1),
                                                   inv_h, inv_h2);
            }
        });
        for (std::size_t k = 0; k < band_.size(); ++k) phi_[band_[k]] = update_[k];
        t_ += dt;
        ++steps_since_reinit_;
    }

    GridSpec grid_;
    double h_;
    double dt_;
    int reinit_every_;
    std::vector<double> phi_;
    std::vector<std::size_t> band_, known_;
    std::vector<double> update_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t version_ = 0;
    double t_ = 0.0;
    int steps_since_reinit_ = 0;
    bool extinct_ = false;
    double extinction_time_ = -1.0;
};

double contours_enclosed_area(const std::vector<Polyline>& contours) {
    double area = 0.0;
    for (const auto& c : contours)
        if (c.closed && c.pts.size() >= 3) area += std::abs(signed_area(c.pts));
    return area;
}

const Polyline* largest_closed(const std::vector<Polyline>& contours) {
    const Polyline* best = nullptr;
    double best_area = -1.0;
    for (const auto& c : contours) {
        if (!c.closed || c.pts.size() < 3) continue;
        const double a = std::abs(signed_area(c.pts));
        if (a > best_area) { best_area = a; best = &c; }
    }
    return best;
}

double dist_to_reference(const std::vector<Polyline>& contours, const Curve& ref) {
    const double diam = std::max(ref.diameter(), 1e-300);
    const double spacing = diam / kHausdorffSampleDivisor;
    const SegmentGrid gref(ref.as_polyline());
    const SegmentGrid gcon(contours);
    double worst = 0.0;
    for (const auto& c : contours)
        worst = std::max(worst, directed_hausdorff(c.sample(spacing), gref));
    worst = std::max(worst,
                     directed_hausdorff(ref.as_polyline().sample(spacing), gcon));
    return worst;
}

void validate_evolve_options(const EvolveOptions& opts) {
    if (!(opts.h > 0.0)) throw DomainError("evolve: h must be positive");
    if (!(opts.T >= 0.0)) throw DomainError("evolve: T must be non-negative");
    const double dt = opts.dt;
    if (dt != 0.0 && dt > 0.25 * opts.h * opts.h * (1.0 + 1e-12))
        throw DomainError("evolve: stability requires dt <= 0.25 h^2, got dt = " +
                          std::to_string(dt) + " with h = " + std::to_string(opts.h));
    if (opts.reinit_every < 1) throw DomainError("evolve: reinit_every must be >= 1");
    double prev = -1.0;
    for (const double s : opts.snapshot_times) {
        if (s < prev) throw DomainError("evolve: snapshot_times must be sorted");
        if (s < 0.0 || s > opts.T + 1e-12)
            throw DomainError("evolve: snapshot_times must lie in [0, T]");
        prev = s;
    }
}

}  // namespace

EvolveResult evolve(const Curve& x, const EvolveOptions& opts) {
    validate_evolve_options(opts);
    const double dt = opts.dt > 0.0 ? opts.dt : 0.2 * opts.h * opts.h;
    const GridSpec grid = opts.grid ? *opts.grid
                                    : GridSpec::covering(x.bounds(), opts.h, 16.0 * opts.h);
    const Curve& ref = opts.reference ? *opts.reference : x;

    BandedSolver solver(x, grid, dt, opts.reinit_every);
    EvolveResult result;

    for (const double ts : opts.snapshot_times) {
        solver.advance_to(ts);
        if (solver.extinct()) break;
        const auto contours = solver.extract_contours();
        const Polyline* main = largest_closed(contours);
        if (!main) {
            result.extinct = true;
            result.extinction_time = solver.t();
            return result;
        }
        Curve curve = Curve::make(main->pts);
        const double sup_a =
            sup_curvature_resampled(curve, opts.curvature_spacing_factor * opts.h);
        FlowSnapshot snap{solver.t(), std::move(curve), sup_a,
                          dist_to_reference(contours, ref), contours_enclosed_area(contours)};
        result.snapshots.push_back(std::move(snap));
    }
    if (!solver.extinct()) solver.advance_to(opts.T);
    if (solver.extinct()) {
        result.extinct = true;
        result.extinction_time = solver.extinction_time();
    }
    return result;
}

FatteningResult fattening_gap(const Curve& inner, const Curve& outer,
                              const EvolveOptions& opts) {
    const double tol = 1e-9 * std::max(outer.diameter(), 1.0);
    {
        const SegmentGrid souter(outer.as_polyline());
        for (const Vec2 p : inner.vertices()) {
            if (!outer.contains(p) && souter.distance(p) > tol)
                throw DomainError("fattening_gap: inner curve is not inside outer");
        }
    }

    EvolveOptions shared = opts;
    if (!shared.grid)
        shared.grid = GridSpec::covering(outer.bounds(), opts.h, 16.0 * opts.h);

    const EvolveResult ri = evolve(inner, shared);
    const EvolveResult ro = evolve(outer, shared);

    FatteningResult out;
    out.inner_extinct = ri.extinct;
    out.outer_extinct = ro.extinct;

    const std::size_t n = std::min(ri.snapshots.size(), ro.snapshots.size());
    for (std::size_t k = 0; k < n; ++k) {
        const FlowSnapshot& si = ri.snapshots[k];
        const FlowSnapshot& so = ro.snapshots[k];
        const SegmentGrid souter(so.curve.as_polyline());
        for (const Vec2 p : si.curve.vertices()) {
            if (!so.curve.contains(p) && souter.distance(p) > 0.5 * opts.h)
                throw TopologyError(
                    "fattening_gap: containment violated at t = " + std::to_string(si.t));
        }
        out.rows.push_back({si.t, hausdorff_distance(si.curve, so.curve)});
    }
    return out;
}

}  // namespace reifflow
