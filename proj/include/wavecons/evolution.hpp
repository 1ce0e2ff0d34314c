#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wavecons/dno.hpp"
#include "wavecons/grid.hpp"
#include "wavecons/params.hpp"
#include "wavecons/spectral.hpp"

namespace wavecons {

/// Evolving surface pair: elevation eta and trace q of the (pseudo-)potential
/// at z = eta, plus the current time.
struct SurfaceState {
    double t = 0.0;
    RealField eta;
    RealField q;

    void validate(double h) const {
        require_same_grid(eta, q, "SurfaceState");
        if (!eta.all_finite() || !q.all_finite())
            throw std::runtime_error("SurfaceState: non-finite samples");
        if (!(eta.max_abs() < h))
            throw std::runtime_error("SurfaceState: max|eta| reached the depth h");
    }
};

struct SolverConfig {
    int dno_order = 4;
    double dt = 2.5e-3;
    bool dealias = true;
    double edge_guard_threshold = 1e-10;
    double edge_guard_fraction = 0.125;

    void validate() const {
        if (dno_order < 0 || dno_order > 8)
            throw std::invalid_argument("SolverConfig: dno_order must lie in 0..8");
        if (!(dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be positive");
        if (!(edge_guard_fraction > 0.0 && edge_guard_fraction < 0.5))
            throw std::invalid_argument("SolverConfig: edge_guard_fraction must lie in (0, 1/2)");
    }
};

/// Largest |eta|, |q| over the outer edge_guard_fraction of the domain on each
/// side. The whole-line decay assumption behind every boundary-flux argument
/// becomes the runtime requirement that this stays below the threshold.
inline double edge_guard_peak(const SurfaceState& s, double fraction) {
    const PeriodicGrid& grid = s.eta.grid();
    const double band = grid.length * fraction;
    double peak = 0.0;
    for (int j = 0; j < grid.n_points; ++j) {
        const double x = grid.node(j);
        if (x < grid.x_min + band || x >= grid.x_min + grid.length - band)
            peak = std::max(peak, std::max(std::abs(s.eta[j]), std::abs(s.q[j])));
    }
    return peak;
}

inline void check_edge_guard(const SurfaceState& s, const SolverConfig& config) {
    const double peak = edge_guard_peak(s, config.edge_guard_fraction);
    if (peak > config.edge_guard_threshold) {
        char msg[160];
        std::snprintf(msg, sizeof(msg),
                      "edge guard violated at t = %.6g: |eta|,|q| peak %.3e in the outer band "
                      "exceeds threshold %.3e",
                      s.t, peak, config.edge_guard_threshold);
        throw std::runtime_error(msg);
    }
}

/// Antiderivative in the whole-line decaying convention for localized data:
/// the zero-mean periodic antiderivative differs from int_{-inf}^x f by a
/// constant, so it is re-anchored to vanish at the periodic seam (where both
/// tails of a localized primitive vanish). Every dx^{-1} in the vorticity
/// formulas means this object.
inline RealField decaying_antiderivative(const RealField& f, double mean_tolerance = 1e-10) {
    RealField F = antiderivative(f, mean_tolerance);
    const double seam = F[0];
    for (int j = 0; j < F.size(); ++j) F[j] -= seam;
    return F;
}

/// Surface velocities (X, Z) = (phi_x, phi_z)|_{z=eta} recovered from the
/// trace derivative and the DNO value:
///   q_x = X + eta_x Z,   G q = Z - eta_x X.
inline std::pair<RealField, RealField> surface_velocities(const RealField& eta,
                                                          const RealField& q,
                                                          const RealField& Gq) {
    require_same_grid(eta, q, "surface_velocities");
    require_same_grid(eta, Gq, "surface_velocities");
    const RealField eta_x = derivative(eta, 1);
    const RealField q_x = derivative(q, 1);
    RealField Z(eta.grid());
    RealField X(eta.grid());
    for (int j = 0; j < eta.size(); ++j) {
        const double ex = eta_x[j];
        Z[j] = (Gq[j] + ex * q_x[j]) / (1.0 + ex * ex);
        X[j] = q_x[j] - ex * Z[j];
    }
    return {X, Z};
}

/// Curvature force sigma * eta_xx / (1 + eta_x^2)^{3/2}.
inline RealField surface_tension_term(const RealField& eta, double sigma,
                                      bool use_dealias = true) {
    if (sigma < 0.0) throw std::invalid_argument("surface_tension_term: sigma must be >= 0");
    if (sigma == 0.0) return RealField(eta.grid(), 0.0);
    const RealField eta_x = derivative(eta, 1);
    const RealField eta_xx = derivative(eta, 2);
    RealField out(eta.grid());
    for (int j = 0; j < eta.size(); ++j)
        out[j] = sigma * eta_xx[j] / std::pow(1.0 + eta_x[j] * eta_x[j], 1.5);
    return use_dealias ? dealias(out) : out;
}

/// Right-hand side values cached alongside each state.
struct SurfaceRhs {
    RealField eta_t;
    RealField q_t;
    RealField Gq;
};

/// Irrotational evolution:
///   eta_t = G q
///   q_t   = -(X^2 + Z^2)/2 + eta_t Z - g eta + surface tension.
inline SurfaceRhs rhs_irrotational(const SurfaceState& state, const PhysicalParams& params,
                                   const SolverConfig& config) {
    if (params.omega != 0.0)
        throw std::invalid_argument("rhs_irrotational: omega must be 0; use rhs_constant_vorticity");
    check_edge_guard(state, config);
    RealField Gq = dno_apply(state.eta, state.q, params.h, config.dno_order, config.dealias);
    auto [X, Z] = surface_velocities(state.eta, state.q, Gq);
    RealField q_t(state.eta.grid());
    for (int j = 0; j < q_t.size(); ++j)
        q_t[j] = -0.5 * (X[j] * X[j] + Z[j] * Z[j]) + Gq[j] * Z[j] - params.g * state.eta[j];
    if (config.dealias) q_t = dealias(q_t);
    if (params.sigma > 0.0)
        q_t = q_t + surface_tension_term(state.eta, params.sigma, config.dealias);
    return {Gq, std::move(q_t), Gq};
}

/// Constant-vorticity evolution in the pseudo-potential variables:
///   eta_t = G q + omega eta eta_x
///   q_t   = eta_t Z - (X^2 + Z^2)/2 + omega eta X - (omega^2/2) eta^2
///           + omega dx^{-1}(eta_t) - g eta + surface tension.
/// The antiderivative is legitimate because eta_t is an exact x-derivative,
/// so its mean vanishes to roundoff.
inline SurfaceRhs rhs_constant_vorticity(const SurfaceState& state, const PhysicalParams& params,
                                         const SolverConfig& config) {
    check_edge_guard(state, config);
    const double om = params.omega;
    RealField Gq = dno_apply(state.eta, state.q, params.h, config.dno_order, config.dealias);
    auto [X, Z] = surface_velocities(state.eta, state.q, Gq);
    const RealField eta_x = derivative(state.eta, 1);

    RealField eta_t = Gq;
    if (om != 0.0) {
        RealField advect = state.eta * eta_x;
        if (config.dealias) advect = dealias(advect);
        eta_t = Gq + om * advect;
    }

    RealField q_t(state.eta.grid());
    for (int j = 0; j < q_t.size(); ++j) {
        const double e = state.eta[j];
        q_t[j] = eta_t[j] * Z[j] - 0.5 * (X[j] * X[j] + Z[j] * Z[j]) + om * e * X[j] -
                 0.5 * om * om * e * e - params.g * e;
    }
    if (config.dealias) q_t = dealias(q_t);
    if (om != 0.0) q_t = q_t + om * decaying_antiderivative(eta_t);
    if (params.sigma > 0.0)
        q_t = q_t + surface_tension_term(state.eta, params.sigma, config.dealias);
    return {std::move(eta_t), std::move(q_t), std::move(Gq)};
}

using RhsFunction =
    std::function<SurfaceRhs(const SurfaceState&, const PhysicalParams&, const SolverConfig&)>;

/// Picks the evolution consistent with params.omega. The omega -> 0 limit of
/// the vorticity right-hand side reproduces the irrotational one exactly, so
/// either selector is valid at omega = 0.
inline SurfaceRhs rhs_auto(const SurfaceState& state, const PhysicalParams& params,
                           const SolverConfig& config) {
    return params.omega == 0.0 ? rhs_irrotational(state, params, config)
                               : rhs_constant_vorticity(state, params, config);
}

/// Classical fixed-step RK4 advance by config.dt.
inline SurfaceState step_rk4(const SurfaceState& state, const PhysicalParams& params,
                             const SolverConfig& config, const RhsFunction& rhs) {
    const double dt = config.dt;
    auto advance = [&](const SurfaceState& s, const SurfaceRhs& k, double factor) {
        SurfaceState out{s.t + factor * dt, s.eta + factor * dt * k.eta_t,
                         s.q + factor * dt * k.q_t};
        return out;
    };
    auto check_stage = [&](const SurfaceState& s, int stage) {
        if (!s.eta.all_finite() || !s.q.all_finite())
            throw std::runtime_error("step_rk4: non-finite state after stage " +
                                     std::to_string(stage) + " at t = " + std::to_string(state.t));
    };

    const SurfaceRhs k1 = rhs(state, params, config);
    SurfaceState s2 = advance(state, k1, 0.5);
    check_stage(s2, 1);
    const SurfaceRhs k2 = rhs(s2, params, config);
    SurfaceState s3 = advance(state, k2, 0.5);
    check_stage(s3, 2);
    const SurfaceRhs k3 = rhs(s3, params, config);
    SurfaceState s4 = advance(state, k3, 1.0);
    check_stage(s4, 3);
    const SurfaceRhs k4 = rhs(s4, params, config);

    SurfaceState out{state.t + dt,
                     state.eta + (dt / 6.0) * (k1.eta_t + 2.0 * k2.eta_t + 2.0 * k3.eta_t + k4.eta_t),
                     state.q + (dt / 6.0) * (k1.q_t + 2.0 * k2.q_t + 2.0 * k3.q_t + k4.q_t)};
    check_stage(out, 4);
    out.validate(params.h);
    return out;
}

/// Canonical Hamiltonian variable zeta = q - (omega/2) dx^{-1} eta. Needs
/// zero-mean eta when omega != 0; for omega = 0 it is q itself.
inline RealField to_canonical(const RealField& q, const RealField& eta, double omega) {
    if (omega == 0.0) return q;
    return q - (0.5 * omega) * decaying_antiderivative(eta);
}

/// One observer snapshot: the state plus the right-hand side evaluated there
/// (density formulas need eta_t at the sample, not a finite difference).
struct Snapshot {
    SurfaceState state;
    RealField Gq;
    RealField eta_t;
    RealField q_t;
};

struct TimeSeries {
    std::vector<Snapshot> snapshots;
    double dt_observer = 0.0;
};

/// Fixed-step integration from state0.t to t_end with snapshots every
/// observer_cadence steps (first and last step always included).
inline TimeSeries run(const SurfaceState& state0, const PhysicalParams& params,
                      const SolverConfig& config, double t_end, int observer_cadence,
                      const RhsFunction& rhs_fn = rhs_auto) {
    params.validate();
    config.validate();
    state0.validate(params.h);
    if (observer_cadence < 1) throw std::invalid_argument("run: observer_cadence must be >= 1");
    if (t_end < state0.t) throw std::invalid_argument("run: t_end must not precede state0.t");

    const double span = t_end - state0.t;
    const long steps = std::lround(span / config.dt);
    if (std::abs(steps * config.dt - span) > 1e-9 * std::max(1.0, std::abs(span)))
        throw std::invalid_argument("run: t_end - t0 must be an integer number of dt steps");

    TimeSeries series;
    series.dt_observer = config.dt * observer_cadence;
    auto record = [&](const SurfaceState& s) {
        SurfaceRhs r = rhs_fn(s, params, config);
        series.snapshots.push_back(
            Snapshot{s, std::move(r.Gq), std::move(r.eta_t), std::move(r.q_t)});
    };

    SurfaceState s = state0;
    record(s);
    for (long step = 1; step <= steps; ++step) {
        s = step_rk4(s, params, config, rhs_fn);
        // Keep the recorded time exact in exact arithmetic of t0 + step*dt.
        s.t = state0.t + static_cast<double>(step) * config.dt;
        if (step % observer_cadence == 0 || step == steps) record(s);
    }
    return series;
}

}  // namespace wavecons
