#include "reifflow/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "reifflow/curvature.hpp"
#include "reifflow/errors.hpp"
#include "reifflow/fractal.hpp"
#include "reifflow/hausdorff.hpp"
#include "reifflow/mollifier.hpp"
#include "reifflow/segment_grid.hpp"

namespace reifflow {

using nlohmann::json;

Curve ShapeSpec::build() const {
    if (type == "koch") return koch_variant(KochSpec{beta, depth, base_side});
    if (type == "circle") return circle_curve(radius, vertex_count);
    if (type == "ellipse") return ellipse_curve(a, b, vertex_count);
    throw DomainError("shape.type must be koch, circle or ellipse, got '" + type + "'");
}

void ExperimentConfig::validate(bool shared_grid_scales) const {
    shape.build();  // surfaces shape errors early
    if (scales.empty()) throw DomainError("config: scales must be non-empty");
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0.0)) throw DomainError("config: scales must be positive");
        if (i > 0 && scales[i] >= scales[i - 1])
            throw DomainError("config: scales must be sorted descending");
    }
    if (!(grid_h > 0.0)) throw DomainError("config: grid.h must be positive");
    if (shared_grid_scales) {
        for (const double r : scales)
            if (r < 6.0 * grid_h)
                throw DomainError("config: every scale must satisfy r >= 6h");
    } else if (scales.front() < 6.0 * grid_h) {
        throw DomainError("config: largest scale must satisfy r >= 6h");
    }
    if (snapshot_times.empty()) throw DomainError("config: time.snapshots must be non-empty");
    for (std::size_t i = 1; i < snapshot_times.size(); ++i)
        if (snapshot_times[i] <= snapshot_times[i - 1])
            throw DomainError("config: time.snapshots must be strictly increasing");
    if (std::abs(T - snapshot_times.back()) > 1e-12 * std::max(1.0, T))
        throw DomainError("config: time.T must equal the last snapshot time");
    if (dt != 0.0 && dt > 0.25 * grid_h * grid_h * (1.0 + 1e-12))
        throw DomainError("config: time.dt violates the stability bound dt <= 0.25 h^2 (h = " +
                          format_g9(grid_h) + ", bound = " + format_g9(0.25 * grid_h * grid_h) +
                          ")");
    if (!(burn_in_c3 >= 0.0)) throw DomainError("config: burn_in_c3 must be >= 0");
    if (reinit_every < 1) throw DomainError("config: reinit_every must be >= 1");
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DomainError(std::string("config: JSON parse error: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        if (j.contains("shape")) {
            const auto& s = j["shape"];
            if (s.contains("type")) cfg.shape.type = s["type"].get<std::string>();
            if (s.contains("beta")) cfg.shape.beta = s["beta"].get<double>();
            if (s.contains("depth")) cfg.shape.depth = s["depth"].get<int>();
            if (s.contains("base_side")) cfg.shape.base_side = s["base_side"].get<double>();
            if (s.contains("radius")) cfg.shape.radius = s["radius"].get<double>();
            if (s.contains("a")) cfg.shape.a = s["a"].get<double>();
            if (s.contains("b")) cfg.shape.b = s["b"].get<double>();
            if (s.contains("vertex_count"))
                cfg.shape.vertex_count = s["vertex_count"].get<int>();
        }
        if (j.contains("scales")) cfg.scales = j["scales"].get<std::vector<double>>();
        if (j.contains("grid")) {
            if (j["grid"].contains("h")) cfg.grid_h = j["grid"]["h"].get<double>();
            if (j["grid"].contains("pad")) cfg.grid_pad = j["grid"]["pad"].get<double>();
        }
        if (j.contains("time")) {
            const auto& t = j["time"];
            if (t.contains("dt")) cfg.dt = t["dt"].get<double>();
            if (t.contains("T")) cfg.T = t["T"].get<double>();
            if (t.contains("snapshots"))
                cfg.snapshot_times = t["snapshots"].get<std::vector<double>>();
        }
        if (j.contains("burn_in_c3")) cfg.burn_in_c3 = j["burn_in_c3"].get<double>();
        if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("reinit_every")) cfg.reinit_every = j["reinit_every"].get<int>();
        if (j.contains("graph")) {
            const auto& g = j["graph"];
            if (g.contains("de")) cfg.g_de = g["de"].get<double>();
            if (g.contains("beta")) cfg.g_beta = g["beta"].get<double>();
            if (g.contains("M")) cfg.g_M = g["M"].get<double>();
            if (g.contains("lambda")) cfg.g_lambda = g["lambda"].get<double>();
            if (g.contains("tau")) cfg.g_tau = g["tau"].get<double>();
            if (g.contains("L")) cfg.g_L = g["L"].get<double>();
            if (g.contains("h")) cfg.g_h = g["h"].get<double>();
            if (g.contains("dt")) cfg.g_dt = g["dt"].get<double>();
        }
    } catch (const json::exception& e) {
        throw DomainError(std::string("config: bad field type: ") + e.what());
    }
    if (cfg.T == 0.0 && !cfg.snapshot_times.empty()) cfg.T = cfg.snapshot_times.back();
    return cfg;
}

std::string ExperimentConfig::to_json_text() const {
    json j;
    j["shape"] = {{"type", shape.type},       {"beta", shape.beta},
                  {"depth", shape.depth},     {"base_side", shape.base_side},
                  {"radius", shape.radius},   {"a", shape.a},
                  {"b", shape.b},             {"vertex_count", shape.vertex_count}};
    j["scales"] = scales;
    j["grid"] = {{"h", grid_h}, {"pad", grid_pad}};
    j["time"] = {{"dt", dt}, {"T", T}, {"snapshots", snapshot_times}};
    j["burn_in_c3"] = burn_in_c3;
    j["out_dir"] = out_dir;
    j["seed"] = seed;
    j["reinit_every"] = reinit_every;
    j["graph"] = {{"de", g_de}, {"beta", g_beta}, {"M", g_M},   {"lambda", g_lambda},
                  {"tau", g_tau}, {"L", g_L},     {"h", g_h},   {"dt", g_dt}};
    return j.dump(2) + "\n";
}

ScalingFit power_fit(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw DomainError("power_fit: size mismatch");
    if (xs.size() < 3) throw DomainError("power_fit: need at least 3 points");
    const std::size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
            throw DomainError("power_fit: inputs must be positive");
        const double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double dn = static_cast<double>(n);
    const double denom = dn * sxx - sx * sx;
    if (denom == 0.0) throw DomainError("power_fit: xs are all equal");
    ScalingFit fit;
    fit.exponent = (dn * sxy - sx * sy) / denom;
    const double intercept = (sy - fit.exponent * sx) / dn;
    fit.prefactor = std::exp(intercept);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double resid = std::log(ys[i]) - (intercept + fit.exponent * std::log(xs[i]));
        ss += resid * resid;
    }
    fit.residual = std::sqrt(ss / dn);
    return fit;
}

// ---------------------------------------------------------------------------
// Graph representation of one curve over another

std::vector<std::pair<double, double>> graph_representation(const Curve& y, const Curve& z) {
    const double sup_a = sup_curvature(y);
    const double bound = sup_a > 0.0 ? 1.0 / (2.0 * sup_a) : y.diameter();
    const double diam = std::max(y.diameter(), 1e-300);

    {  // z must live in y's tubular neighborhood
        const SegmentGrid gy(y.as_polyline());
        const auto zsamples = z.as_polyline().sample(diam / kHausdorffSampleDivisor);
        for (const Vec2 p : zsamples)
            if (gy.distance(p) >= bound)
                throw DomainError("graph_representation: z leaves the tubular neighborhood");
    }

    const auto& zv = z.vertices();
    const std::size_t nz = zv.size();
    const double tol = 1e-9 * std::max(1.0, diam);

    std::vector<std::pair<double, double>> out;
    out.reserve(y.size());
    std::vector<double> hits;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const Vec2 p0 = y.vertex(i);
        const Vec2 n = y.outward_normal(i);
        hits.clear();
        for (std::size_t k = 0; k < nz; ++k) {
            const Vec2 a = zv[k];
            const Vec2 e = zv[(k + 1) % nz] - a;
            const double den = cross(n, e);
            if (den == 0.0) continue;
            const Vec2 d = a - p0;
            const double s = cross(d, e) / den;
            const double v = cross(n, d) / den;
            if (v < -1e-12 || v > 1.0 + 1e-12) continue;
            if (std::abs(s) > bound) continue;
            hits.push_back(s);
        }
        std::sort(hits.begin(), hits.end());
        hits.erase(std::unique(hits.begin(), hits.end(),
                               [tol](double u, double w) { return std::abs(u - w) <= tol; }),
                   hits.end());
        if (hits.size() != 1)
            throw NotAGraphError("graph_representation: normal at vertex " +
                                 std::to_string(i) + " meets z " +
                                 std::to_string(hits.size()) + " times");
        out.emplace_back(y.arclength_to(i), hits[0]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Report emission

void emit_report(const std::vector<ReportFiles>& results,
                 const std::filesystem::path& out_dir) {
    bool any = false;
    for (const auto& r : results) any = any || !r.tables.empty() || !r.plots.empty();
    if (!any) throw DomainError("emit_report: no completed results");

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("emit_report: cannot create " + out_dir.string());

    for (const auto& r : results) {
        for (const auto& [name, table] : r.tables) write_csv(out_dir / name, table);
        for (const auto& [name, plot] : r.plots) write_svg_loglog(out_dir / name, plot);
    }
}

// ---------------------------------------------------------------------------
// Experiment drivers

namespace {

double shape_delta(const ShapeSpec& shape) {
    return shape.type == "koch" ? std::sin(shape.beta) : std::sin(shape.beta > 0 ? shape.beta : 0.1);
}

GridSpec shared_grid(const Curve& x, const ExperimentConfig& cfg, double extra) {
    const double pad =
        cfg.grid_pad > 0.0 ? cfg.grid_pad : extra + 16.0 * cfg.grid_h;
    return GridSpec::covering(x.bounds(), cfg.grid_h, pad);
}

// Exactly-one-component check inside sampled balls: pieces of the clipped
// curve that reach the concentric 9/10 ball.
int connectivity_violations(const Curve& flowed, const Curve& reference, double t,
                            double max_scale) {
    const double s = std::min(3.0 * std::sqrt(t), max_scale);
    if (!(s > 0.0)) return 0;
    int violations = 0;
    const std::size_t stride = std::max<std::size_t>(1, reference.size() / 8);
    for (std::size_t i = 0; i < reference.size(); i += stride) {
        const Vec2 c = reference.vertex(i);
        const auto pieces = clip_to_ball(flowed.as_polyline(), c, s);
        int reaching = 0;
        for (const auto& piece : pieces) {
            bool reaches = false;
            for (const Vec2 p : piece.sample(s / 64.0))
                if (dist(p, c) <= 0.9 * s) { reaches = true; break; }
            if (reaches) ++reaching;
        }
        if (reaching != 1) ++violations;
    }
    return violations;
}

}  // namespace

UniformReport run_uniform_estimates(const ExperimentConfig& cfg) {
    cfg.validate();
    const Curve x = cfg.shape.build();
    const GridSpec grid = shared_grid(x, cfg, cfg.scales.front());

    UniformReport report;
    CsvTable raw;
    raw.header = "r,t,sup_A,dist_to_reference,enclosed_area,vertex_count";
    CsvTable normalized;
    normalized.header = "r,t,supA_sqrt_t,dist_over_sqrt_t";

    for (const double r : cfg.scales) {
        UniformScaleResult row;
        row.r = r;
        try {
            const Curve xr = approximate(x, r, cfg.grid_h);
            EvolveOptions opts;
            opts.T = cfg.T;
            opts.h = cfg.grid_h;
            opts.dt = cfg.dt;
            opts.reinit_every = cfg.reinit_every;
            opts.snapshot_times = cfg.snapshot_times;
            opts.grid = grid;
            opts.reference = &x;
            const EvolveResult res = evolve(xr, opts);
            const double burn_in = cfg.burn_in_c3 * r * r;
            for (const FlowSnapshot& snap : res.snapshots) {
                raw.rows.push_back({r, snap.t, snap.sup_A, snap.dist_to_reference,
                                    snap.enclosed_area,
                                    static_cast<double>(snap.curve.size())});
                if (snap.t < burn_in || snap.t <= 0.0) continue;
                const double sa = snap.sup_A * std::sqrt(snap.t);
                const double dd = snap.dist_to_reference / std::sqrt(snap.t);
                normalized.rows.push_back({r, snap.t, sa, dd});
                row.max_supA_sqrt_t = std::max(row.max_supA_sqrt_t, sa);
                row.max_dist_over_sqrt_t = std::max(row.max_dist_over_sqrt_t, dd);
                row.used_snapshots += 1;
                row.connectivity_violations +=
                    connectivity_violations(snap.curve, x, snap.t, x.diameter() / 4.0);
            }
            if (row.used_snapshots == 0) {
                row.failed = true;
                row.error = "no snapshots past burn-in c3 r^2";
            }
        } catch (const Error& e) {
            row.failed = true;
            row.error = e.what();
        }
        report.per_scale.push_back(std::move(row));
    }

    double lo_sa = 1e300, hi_sa = 0.0, lo_d = 1e300, hi_d = 0.0;
    CsvTable summary;
    summary.header =
        "r,max_supA_sqrt_t,max_dist_over_sqrt_t,used_snapshots,connectivity_violations,failed";
    for (const auto& row : report.per_scale) {
        summary.rows.push_back({row.r, row.max_supA_sqrt_t, row.max_dist_over_sqrt_t,
                                static_cast<double>(row.used_snapshots),
                                static_cast<double>(row.connectivity_violations),
                                row.failed ? 1.0 : 0.0});
        if (row.failed) continue;
        lo_sa = std::min(lo_sa, row.max_supA_sqrt_t);
        hi_sa = std::max(hi_sa, row.max_supA_sqrt_t);
        lo_d = std::min(lo_d, row.max_dist_over_sqrt_t);
        hi_d = std::max(hi_d, row.max_dist_over_sqrt_t);
    }
    report.ratio_supA = lo_sa > 0.0 && hi_sa > 0.0 ? hi_sa / lo_sa : 0.0;
    report.ratio_dist = lo_d > 0.0 && hi_d > 0.0 ? hi_d / lo_d : 0.0;

    report.files.name = "uniform";
    report.files.tables = {{"uniform_raw.csv", raw},
                           {"uniform_normalized.csv", normalized},
                           {"uniform_summary.csv", summary}};
    if (!normalized.rows.empty()) {
        PlotSpec plot;
        plot.title = "uniform estimates: sup|A| sqrt(t) per scale";
        plot.x_label = "t";
        plot.y_label = "sup|A| sqrt(t)";
        for (const auto& row : report.per_scale) {
            if (row.failed) continue;
            PlotSeries series;
            series.label = "r = " + format_g9(row.r);
            for (const auto& nrow : normalized.rows) {
                if (nrow[0] == row.r) {
                    series.xs.push_back(nrow[1]);
                    series.ys.push_back(std::max(nrow[2], 1e-12));
                }
            }
            if (!series.xs.empty()) plot.series.push_back(std::move(series));
        }
        if (!plot.series.empty())
            report.files.plots.push_back({"uniform_supA.svg", plot});
    }
    return report;
}

SeparationReport run_separation(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.scales.size() < 3)
        throw DomainError("run_separation: need at least 3 scales");
    for (const double r : cfg.scales)
        if (cfg.grid_h > r / 12.0 * (1.0 + 1e-12))
            throw DomainError("run_separation: shared grid must satisfy h <= r/12 for all scales");

    const Curve x = cfg.shape.build();
    const GridSpec grid = shared_grid(x, cfg, cfg.scales.front());

    // evolve every scale once
    std::vector<std::optional<EvolveResult>> runs(cfg.scales.size());
    std::vector<std::string> run_errors(cfg.scales.size());
    for (std::size_t i = 0; i < cfg.scales.size(); ++i) {
        try {
            const Curve xr = approximate(x, cfg.scales[i], cfg.grid_h);
            EvolveOptions opts;
            opts.T = cfg.T;
            opts.h = cfg.grid_h;
            opts.dt = cfg.dt;
            opts.reinit_every = cfg.reinit_every;
            opts.snapshot_times = cfg.snapshot_times;
            opts.grid = grid;
            opts.reference = &x;
            runs[i] = evolve(xr, opts);
        } catch (const Error& e) {
            run_errors[i] = e.what();
        }
    }

    SeparationReport report;
    CsvTable pair_rows;
    pair_rows.header = "r,s,t,dH,rho";
    std::vector<double> fit_xs, fit_ys;

    for (std::size_t i = 0; i + 1 < cfg.scales.size(); ++i) {
        SeparationPair pair;
        pair.r = cfg.scales[i];
        pair.s = cfg.scales[i + 1];
        if (!runs[i] || !runs[i + 1]) {
            pair.failed = true;
            pair.error = !runs[i] ? run_errors[i] : run_errors[i + 1];
            report.pairs.push_back(std::move(pair));
            continue;
        }
        const double burn_in = cfg.burn_in_c3 * pair.r * pair.r;
        const auto& sr = runs[i]->snapshots;
        const auto& ss = runs[i + 1]->snapshots;
        const std::size_t n = std::min(sr.size(), ss.size());
        bool any = false;
        for (std::size_t k = 0; k < n; ++k) {
            const double t = sr[k].t;
            if (t < burn_in || t <= 0.0) continue;
            const double dh = hausdorff_distance(sr[k].curve, ss[k].curve);
            const double rho = dh / (std::sqrt(pair.r) * std::pow(t, 0.25));
            pair_rows.rows.push_back({pair.r, pair.s, t, dh, rho});
            pair.dh_final = dh;
            pair.rho_final = rho;
            any = true;
        }
        if (!any) {
            pair.failed = true;
            pair.error = "no snapshots past burn-in";
        } else {
            const std::size_t last = n - 1;
            try {
                const auto rep = graph_representation(sr[last].curve, ss[last].curve);
                double sup_u = 0.0;
                for (const auto& [s_arc, u] : rep) sup_u = std::max(sup_u, std::abs(u));
                pair.sup_u = sup_u;
            } catch (const Error&) {
                pair.sup_u = -1.0;  // not a graph at this resolution
            }
            fit_xs.push_back(pair.r);
            fit_ys.push_back(std::max(pair.dh_final, 1e-15));
        }
        report.pairs.push_back(std::move(pair));
    }

    double lo = 1e300, hi = 0.0;
    for (const auto& p : report.pairs) {
        if (p.failed) continue;
        lo = std::min(lo, p.rho_final);
        hi = std::max(hi, p.rho_final);
    }
    report.rho_max_over_min = lo > 0.0 ? hi / lo : 0.0;
    if (fit_xs.size() >= 3) report.fit = power_fit(fit_xs, fit_ys);

    CsvTable summary;
    summary.header = "r,s,dH_final,rho_final,sup_u,failed";
    for (const auto& p : report.pairs)
        summary.rows.push_back(
            {p.r, p.s, p.dh_final, p.rho_final, p.sup_u, p.failed ? 1.0 : 0.0});

    report.files.name = "separation";
    report.files.tables = {{"separation_rows.csv", pair_rows},
                           {"separation_summary.csv", summary}};
    if (fit_xs.size() >= 3) {
        PlotSpec plot;
        plot.title = "separation: d_H(X^r_t, X^{r/2}_t) at final t";
        plot.x_label = "r";
        plot.y_label = "d_H";
        plot.series.push_back({"final separation", fit_xs, fit_ys});
        plot.has_fit = true;
        plot.fit_exponent = report.fit.exponent;
        plot.fit_prefactor = report.fit.prefactor;
        report.files.plots.push_back({"separation_fit.svg", plot});
    }
    return report;
}

namespace {

// One barrier flow at scale m: X^m offset both ways, both offsets evolved,
// gaps sampled at the given times.
std::vector<GapSample> barrier_gaps(const Curve& x, double m, double h, double delta,
                                    const ExperimentConfig& cfg,
                                    const std::vector<double>& times) {
    const Curve xm = approximate(x, m, h);
    const double off = 10.0 * delta * m;
    const Curve outer = offset_curve(xm, off);
    const Curve inner = offset_curve(xm, -off);
    EvolveOptions opts;
    opts.T = times.back();
    opts.h = h;
    opts.dt = 0.0;
    opts.reinit_every = cfg.reinit_every;
    opts.snapshot_times = times;
    return fattening_gap(inner, outer, opts).rows;
}

}  // namespace

NonfatteningReport run_nonfattening(const ExperimentConfig& cfg) {
    cfg.validate(false);
    if (cfg.scales.size() < 2)
        throw DomainError("run_nonfattening: need at least 2 scales");
    const Curve x = cfg.shape.build();
    const double delta = shape_delta(cfg.shape);
    const double cells_per_r = cfg.scales.front() / cfg.grid_h;

    NonfatteningReport report;
    CsvTable rows;
    rows.header = "pair_r,run_scale,t,gap";

    for (std::size_t i = 0; i + 1 < cfg.scales.size(); ++i) {
        NonfatteningPair pair;
        pair.r = cfg.scales[i];
        pair.s = cfg.scales[i + 1];
        const double base = cfg.burn_in_c3 * pair.r * pair.r;
        pair.t_star = 1.25 * base;
        const std::vector<double> times = {0.5 * base, 0.75 * base, base,
                                           1.25 * base, 1.5 * base};
        try {
            const auto gr = barrier_gaps(x, pair.r, pair.r / cells_per_r, delta, cfg, times);
            const auto gs = barrier_gaps(x, pair.s, pair.s / cells_per_r, delta, cfg, times);
            if (gr.size() < times.size() || gs.size() < times.size())
                throw ExtinctError("barrier flow extinct before the comparison time");
            for (const auto& g : gr) rows.rows.push_back({pair.r, pair.r, g.t, g.gap});
            for (const auto& g : gs) rows.rows.push_back({pair.r, pair.s, g.t, g.gap});
            pair.gap_r = gr[3].gap;
            pair.gap_s = gs[3].gap;
            pair.ratio = pair.gap_r > 0.0 ? pair.gap_s / pair.gap_r : -1.0;
            for (const auto& g : gr)
                if (gr.front().gap > 0.0)
                    pair.max_gap_growth =
                        std::max(pair.max_gap_growth, g.gap / gr.front().gap);
        } catch (const Error& e) {
            pair.failed = true;
            pair.error = e.what();
        }
        report.pairs.push_back(std::move(pair));
    }

    CsvTable summary;
    summary.header = "r,s,t_star,gap_r,gap_s,ratio,failed";
    for (const auto& p : report.pairs)
        summary.rows.push_back(
            {p.r, p.s, p.t_star, p.gap_r, p.gap_s, p.ratio, p.failed ? 1.0 : 0.0});

    report.files.name = "nonfattening";
    report.files.tables = {{"nonfattening_rows.csv", rows},
                           {"nonfattening_summary.csv", summary}};
    return report;
}

}  // namespace reifflow
