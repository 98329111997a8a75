#pragma once

#include <optional>
#include <vector>

#include "reifflow/geometry.hpp"
#include "reifflow/scalar_field.hpp"

namespace reifflow {

/// Level-set state: phi negative inside, zero set is the curve.
struct LevelSetState {
    ScalarField phi;
    double t = 0.0;
    int steps_since_reinit = 0;
};

/// Exact point-to-segment distance with sign from the even-odd rule.
ScalarField signed_distance(const Curve& x, const GridSpec& grid);

/// Signed distance to a collection of closed chains (sign by combined parity).
ScalarField signed_distance_to_polylines(const std::vector<Polyline>& ps, const GridSpec& grid);

LevelSetState make_level_set_state(const Curve& x, const GridSpec& grid);

/// One explicit step of phi_t = |grad phi|_eps div(grad phi / |grad phi|_eps),
/// centered differences, eps = 1e-8. Requires dt <= 0.25 h^2.
void mcf_step(LevelSetState& state, double dt);

/// Replaces phi by the exact signed distance to its own extracted zero set.
/// Throws ExtinctError when the zero set is empty.
void reinitialize(LevelSetState& state);

struct FlowSnapshot {
    double t = 0.0;
    Curve curve;               // largest closed component of the zero set
    double sup_A = 0.0;
    double dist_to_reference = 0.0;
    double enclosed_area = 0.0;
};

struct EvolveOptions {
    double T = 0.0;
    double h = 0.0;
    double dt = 0.0;                    // 0 -> 0.2 h^2
    int reinit_every = 25;
    std::vector<double> snapshot_times; // sorted, within [0, T]
    std::optional<GridSpec> grid;       // shared grid override
    const Curve* reference = nullptr;   // d_H target; nullptr -> initial curve
    double curvature_spacing_factor = 4.0;  // curvature resample spacing / h
};

struct EvolveResult {
    std::vector<FlowSnapshot> snapshots;
    bool extinct = false;
    double extinction_time = -1.0;
};

EvolveResult evolve(const Curve& x, const EvolveOptions& opts);

struct GapSample {
    double t = 0.0;
    double gap = 0.0;
};

struct FatteningResult {
    std::vector<GapSample> rows;
    bool inner_extinct = false;
    bool outer_extinct = false;
};

/// Evolves the nested pair independently on one shared grid; gap(t) is the
/// Hausdorff distance between the two zero sets. Containment of inner in
/// outer is asserted at every snapshot (violation throws TopologyError).
FatteningResult fattening_gap(const Curve& inner, const Curve& outer,
                              const EvolveOptions& opts);

}  // namespace reifflow
