#include "reifflow/graph_flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace reifflow {

namespace {

std::size_t node_count(double L, double h, GraphBoundary boundary) {
    const double n_real = 2.0 * L / h;
    const auto n = static_cast<std::size_t>(std::llround(n_real));
    if (n < 4 || std::abs(n_real - static_cast<double>(n)) > 1e-9)
        throw DomainError("graph grid: h must divide 2L into at least 4 intervals");
    return boundary == GraphBoundary::periodic ? n : n + 1;
}

}  // namespace

GraphState make_graph_state(double L, double h, GraphBoundary boundary,
                            const std::function<double(double)>& u0) {
    if (!(L > 0.0) || !(h > 0.0)) throw DomainError("graph grid: L, h must be positive");
    GraphState s;
    s.L = L;
    s.h = h;
    s.boundary = boundary;
    s.u.resize(node_count(L, h, boundary));
    for (std::size_t i = 0; i < s.u.size(); ++i) s.u[i] = u0(s.x(i));
    return s;
}

std::size_t GraphState::center_index() const {
    const double idx = L / h;
    const auto i = static_cast<std::size_t>(std::llround(idx));
    if (std::abs(idx - static_cast<double>(i)) > 1e-9)
        throw DomainError("graph grid: x = 0 is not a node");
    return i;
}

double GraphState::sup_abs_u() const {
    double m = 0.0;
    for (const double v : u) m = std::max(m, std::abs(v));
    return m;
}

double GraphState::ux(std::size_t i) const {
    const std::size_t n = u.size();
    if (boundary == GraphBoundary::periodic)
        return (u[(i + 1) % n] - u[(i + n - 1) % n]) / (2.0 * h);
    if (i == 0) return (u[1] - u[0]) / h;
    if (i == n - 1) return (u[n - 1] - u[n - 2]) / h;
    return (u[i + 1] - u[i - 1]) / (2.0 * h);
}

double GraphState::uxx(std::size_t i) const {
    const std::size_t n = u.size();
    if (boundary == GraphBoundary::periodic) {
        const double l = u[(i + n - 1) % n], r = u[(i + 1) % n];
        return (r - 2.0 * u[i] + l) / (h * h);
    }
    if (i == 0 || i == n - 1) return 0.0;
    return (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h);
}

double GraphState::sup_abs_ux() const {
    double m = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) m = std::max(m, std::abs(ux(i)));
    return m;
}

namespace {

template <bool Nonlinear>
void explicit_step(GraphState& s, double dt) {
    if (!(dt > 0.0) || dt > 0.4 * s.h * s.h * (1.0 + 1e-12))
        throw DomainError("graph step: stability requires 0 < dt <= 0.4 h^2");
    const std::size_t n = s.u.size();
    const double inv_h2 = 1.0 / (s.h * s.h);
    const double inv_2h = 0.5 / s.h;
    static thread_local std::vector<double> next;
    next.resize(n);

    auto update = [&](double l, double c, double r) {
        const double uxx = (r - 2.0 * c + l) * inv_h2;
        if constexpr (Nonlinear) {
            const double ux = (r - l) * inv_2h;
            return c + dt * uxx / (1.0 + ux * ux);
        } else {
            return c + dt * uxx;
        }
    };

    if (s.boundary == GraphBoundary::periodic) {
        for (std::size_t i = 0; i < n; ++i)
            next[i] = update(s.u[(i + n - 1) % n], s.u[i], s.u[(i + 1) % n]);
    } else {
        next[0] = s.u[0];
        next[n - 1] = s.u[n - 1];
        for (std::size_t i = 1; i + 1 < n; ++i)
            next[i] = update(s.u[i - 1], s.u[i], s.u[i + 1]);
    }
    for (const double v : next)
        if (!std::isfinite(v))
            throw BlowupError("graph step: non-finite value at t = " + std::to_string(s.t));
    s.u.swap(next);
    s.t += dt;
}

}  // namespace

void graph_mcf_step(GraphState& state, double dt) { explicit_step<true>(state, dt); }

void heat_step(GraphState& state, double dt) { explicit_step<false>(state, dt); }

void advance(GraphState& state, double target, double dt,
             void (*step)(GraphState&, double)) {
    while (state.t < target - 1e-15 * std::max(1.0, target)) {
        step(state, std::min(dt, target - state.t));
    }
}

EstimateCheck kernel_constant_experiment(double de, double L, double tau, double h,
                                         double dt) {
    if (!(de > 0.0) || !(tau > 0.0)) throw DomainError("kernel experiment: de, tau > 0");
    if (!(L * L >= 100.0 * tau))
        throw DomainError("kernel experiment: requires tau << L^2 (L >= 10 sqrt(tau))");
    if (h > std::sqrt(tau) / 10.0 * (1.0 + 1e-12))
        throw ResolutionError("kernel experiment: requires h <= sqrt(tau)/10");
    if (dt <= 0.0) dt = 0.25 * h * h;

    GraphState s = make_graph_state(L, h, GraphBoundary::dirichlet, [de](double x) {
        if (x > 0.0) return de;
        if (x < 0.0) return -de;
        return 0.0;
    });
    advance(s, tau, dt, heat_step);

    const std::size_t c = s.center_index();
    const double lhs = std::abs((s.u[c + 1] - s.u[c - 1]) / (2.0 * h));
    const double rhs = 1.02 * de / std::sqrt(std::numbers::pi * tau);
    return make_check(lhs, rhs);
}

InteriorChecks interior_curvature_experiment(double de, double beta, double M,
                                             double lambda, double tau, double L,
                                             double h, double dt) {
    if (!(de > 0.0) || !(beta > 0.0)) throw DomainError("interior experiment: de, beta > 0");
    if (!(M >= 1.0) || !(lambda > 0.0 && lambda < 1.0))
        throw DomainError("interior experiment: need M >= 1, lambda in (0,1)");
    if (!(L * L >= 100.0 * tau))
        throw DomainError("interior experiment: requires tau << L^2");

    // Slope-capped Gaussian bump: width from tau unless the height cap binds.
    const double sqrt_e = std::sqrt(std::numbers::e);
    const double w = std::min(std::sqrt(tau) / 2.0, beta / (0.9 * sqrt_e * de));
    const double amp = 0.9 * de * w * sqrt_e;
    if (h > w / 8.0)
        throw ResolutionError("interior experiment: h too coarse for the datum width");
    if (dt <= 0.0) dt = 0.25 * h * h;

    GraphState s = make_graph_state(L, h, GraphBoundary::dirichlet, [amp, w](double x) {
        return amp * std::exp(-x * x / (2.0 * w * w));
    });

    bool conclusive = true;
    const double slack = 1.0 + 1e-9;
    auto monitor = [&] {
        const double su = s.sup_abs_u(), sux = s.sup_abs_ux();
        if (su > M * M * beta * slack || sux > M * de * slack) conclusive = false;
        if (s.t <= lambda * tau * slack && (su > beta * slack || sux > de * slack))
            conclusive = false;
    };

    monitor();
    const double check_interval = tau / 64.0;
    double next_check = check_interval;
    while (s.t < tau - 1e-15 * tau) {
        graph_mcf_step(s, std::min(dt, tau - s.t));
        if (s.t >= next_check || s.t >= tau - 1e-15 * tau) {
            monitor();
            next_check += check_interval;
        }
    }

    const std::size_t c = s.center_index();
    const double ux = s.ux(c);
    const double lhs = std::abs(s.uxx(c)) / std::pow(1.0 + ux * ux, 1.5);
    const double rhs_a = 1.1 * de / std::sqrt(std::numbers::pi * tau);
    const double rhs_b = kInteriorConstantB * beta / tau + 0.1 * de / std::sqrt(tau);

    InteriorChecks out;
    out.check_a = make_check(lhs, rhs_a);
    out.check_b = make_check(lhs, rhs_b);
    out.conclusive = conclusive;
    return out;
}

std::vector<double> gradient_function(const GraphState& state) {
    std::vector<double> v(state.u.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double g = state.ux(i);
        v[i] = std::sqrt(1.0 + g * g);
    }
    return v;
}

EstimateCheck ecker_huisken_check_values(const std::vector<double>& v_t0,
                                         const std::vector<double>& v_t, double L,
                                         double h, double t0, double t, double x0,
                                         double r) {
    if (!(t >= t0)) throw DomainError("ecker_huisken_check: t must be >= t0");
    if (!(t - t0 < r * r / 2.0))
        throw DomainError("ecker_huisken_check: requires t - t0 < r^2 / (2n), n = 1");
    if (v_t0.size() != v_t.size())
        throw DomainError("ecker_huisken_check: snapshot sizes differ");

    double rhs = 0.0;
    double lhs = -1e300;
    const double shrink2 = r * r - 2.0 * (t - t0);
    for (std::size_t i = 0; i < v_t0.size(); ++i) {
        const double x = -L + static_cast<double>(i) * h;
        const double d2 = (x - x0) * (x - x0);
        if (d2 <= r * r) rhs = std::max(rhs, v_t0[i]);
        if (d2 <= shrink2) {
            const double factor = 1.0 - (d2 + 2.0 * (t - t0)) / (r * r);
            lhs = std::max(lhs, factor * v_t[i]);
        }
    }
    if (!(rhs > 0.0)) throw DomainError("ecker_huisken_check: ball contains no nodes");
    return make_check(lhs, rhs);
}

EstimateCheck ecker_huisken_check(const GraphState& at_t0, const GraphState& at_t,
                                  double x0, double r) {
    if (at_t0.u.size() != at_t.u.size() || at_t0.h != at_t.h || at_t0.L != at_t.L)
        throw DomainError("ecker_huisken_check: states live on different grids");
    return ecker_huisken_check_values(gradient_function(at_t0), gradient_function(at_t),
                                      at_t0.L, at_t0.h, at_t0.t, at_t.t, x0, r);
}

}  // namespace reifflow
