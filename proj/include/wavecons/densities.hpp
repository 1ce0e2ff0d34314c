#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "wavecons/evolution.hpp"
#include "wavecons/grid.hpp"
#include "wavecons/params.hpp"
#include "wavecons/spectral.hpp"

namespace wavecons {

/// Integrated conserved quantities at one instant. The vorticity family is
/// expressed in the canonical variable zeta = q - (omega/2) dx^{-1} eta and
/// has no T7 (the generating weak form leaves it undetermined there).
struct DensitySample {
    double t = 0.0;
    std::array<double, 8> irrotational{};      // T1..T8
    std::array<double, 7> vorticity{};         // T1..T6, T8
    double hamiltonian = 0.0;

    bool all_finite() const {
        for (double v : irrotational)
            if (!std::isfinite(v)) return false;
        for (double v : vorticity)
            if (!std::isfinite(v)) return false;
        return std::isfinite(hamiltonian) && std::isfinite(t);
    }
};

/// Surface densities of the irrotational table, integrated over the surface:
///   T1 = -eta_x q
///   T2 = q eta_t / 2 + g eta^2 / 2 (+ sigma (sqrt(1 + eta_x^2) - 1))
///   T3 = eta
///   T4 = q + g t eta
///   T5 = x eta + t eta_x q
///   T6 = eta^2 / 2 - t q - g t^2 eta / 2
///   T7 = q (eta - x eta_x) - 4 t T2 + (7/2) g t eta^2 - (7/2) g t^2 q
///        - (7/6) g^2 t^3 eta
///   T8 = (x + eta eta_x) q + g t x eta + (1/2) t^2 g eta_x q
/// eta_t must be the analytic right-hand side at this state.
inline std::array<double, 8> densities_irrotational(const SurfaceState& state,
                                                    const RealField& eta_t,
                                                    const PhysicalParams& params) {
    require_same_grid(state.eta, eta_t, "densities_irrotational");
    const RealField& eta = state.eta;
    const RealField& q = state.q;
    const RealField eta_x = derivative(eta, 1);
    const RealField xs = x_field(eta.grid());
    const double t = state.t;
    const double g = params.g;

    RealField d1(eta.grid()), d2(eta.grid()), d4(eta.grid()), d5(eta.grid()), d6(eta.grid()),
        d7(eta.grid()), d8(eta.grid());
    for (int j = 0; j < eta.size(); ++j) {
        const double e = eta[j], ex = eta_x[j], qq = q[j], x = xs[j], et = eta_t[j];
        double t2 = 0.5 * qq * et + 0.5 * g * e * e;
        if (params.sigma > 0.0) t2 += params.sigma * (std::sqrt(1.0 + ex * ex) - 1.0);
        d1[j] = -ex * qq;
        d2[j] = t2;
        d4[j] = qq + g * t * e;
        d5[j] = x * e + t * ex * qq;
        d6[j] = 0.5 * e * e - t * qq - 0.5 * g * t * t * e;
        d7[j] = qq * (e - x * ex) - 4.0 * t * t2 + 3.5 * g * t * e * e - 3.5 * g * t * t * qq -
                (7.0 / 6.0) * g * g * t * t * t * e;
        d8[j] = (x + e * ex) * qq + g * t * x * e + 0.5 * t * t * g * ex * qq;
    }
    return {integrate(d1), integrate(d2), integrate(eta), integrate(d4),
            integrate(d5), integrate(d6), integrate(d7),  integrate(d8)};
}

/// Surface densities of the constant-vorticity table (T7 is undetermined
/// there and excluded). The table's T2 is read with the trace q standing in
/// for phi at the surface, and its eta_t factor as the kinematic flux
/// Gq = (phi_z - eta_x phi_x)|_{z=eta} = eta_t - omega eta eta_x; with that
/// reading the integrated T2 is exactly the bulk energy of the sheared flow
/// (up to the still-water offset):
///   T1 = -eta_x zeta
///   T2 = q Gq / 2 + omega eta eta_x q + (omega^2/6) eta^3 + (g/2) eta^2
///   T3 = eta
///   T4 = zeta + (omega/2) x eta + g t eta + omega t zeta eta_x
///   T5 = x eta + t zeta eta_x
///   T6 = eta^2/2 - t zeta - (g t^2/2) eta + (omega x t / 2) eta
///   T8 = zeta (x + eta eta_x) + x g t eta + (g t^2/2) eta_x zeta
///        - omega x^2 eta / 4 + (omega/12) eta^3
inline std::array<double, 7> densities_vorticity(const SurfaceState& state, const RealField& eta_t,
                                                 const RealField& Gq,
                                                 const PhysicalParams& params) {
    require_same_grid(state.eta, eta_t, "densities_vorticity");
    require_same_grid(state.eta, Gq, "densities_vorticity");
    const RealField& eta = state.eta;
    const RealField& q = state.q;
    const RealField zeta = to_canonical(q, eta, params.omega);
    const RealField eta_x = derivative(eta, 1);
    const RealField xs = x_field(eta.grid());
    const double t = state.t;
    const double g = params.g;
    const double om = params.omega;

    RealField d1(eta.grid()), d2(eta.grid()), d4(eta.grid()), d5(eta.grid()), d6(eta.grid()),
        d8(eta.grid());
    for (int j = 0; j < eta.size(); ++j) {
        const double e = eta[j], ex = eta_x[j], qq = q[j], z = zeta[j], x = xs[j];
        d1[j] = -ex * z;
        d2[j] = 0.5 * qq * Gq[j] + om * e * ex * qq + om * om * e * e * e / 6.0 + 0.5 * g * e * e;
        d4[j] = z + 0.5 * om * x * e + g * t * e + om * t * z * ex;
        d5[j] = x * e + t * z * ex;
        d6[j] = 0.5 * e * e - t * z - 0.5 * g * t * t * e + 0.5 * om * x * t * e;
        d8[j] = z * (x + e * ex) + x * g * t * e + 0.5 * g * t * t * ex * z -
                0.25 * om * x * x * e + om * e * e * e / 12.0;
    }
    return {integrate(d1), integrate(d2), integrate(eta), integrate(d4),
            integrate(d5), integrate(d6), integrate(d8)};
}

/// Hamiltonian surface integral: H = ∮ (q G q + g eta^2)/2 dx, plus the
/// arc-length excess sigma ∮ (sqrt(1+eta_x^2) - 1) dx with surface tension.
/// Coincides with the integrated T2 whenever eta_t = G q.
inline double hamiltonian(const SurfaceState& state, const RealField& Gq,
                          const PhysicalParams& params) {
    require_same_grid(state.eta, Gq, "hamiltonian");
    RealField dens(state.eta.grid());
    for (int j = 0; j < dens.size(); ++j)
        dens[j] = 0.5 * (state.q[j] * Gq[j] + params.g * state.eta[j] * state.eta[j]);
    double H = integrate(dens);
    if (params.sigma > 0.0) {
        const RealField eta_x = derivative(state.eta, 1);
        RealField arc(state.eta.grid());
        for (int j = 0; j < arc.size(); ++j)
            arc[j] = std::sqrt(1.0 + eta_x[j] * eta_x[j]) - 1.0;
        H += params.sigma * integrate(arc);
    }
    return H;
}

/// Full density sample for one snapshot.
inline DensitySample sample_densities(const Snapshot& snap, const PhysicalParams& params) {
    DensitySample s;
    s.t = snap.state.t;
    s.irrotational = densities_irrotational(snap.state, snap.eta_t, params);
    s.vorticity = densities_vorticity(snap.state, snap.eta_t, snap.Gq, params);
    s.hamiltonian = hamiltonian(snap.state, snap.Gq, params);
    return s;
}

struct Drift {
    double max_abs_drift = 0.0;
    double relative_drift = 0.0;
};

/// drift = max_t |T(t) - T(0)|; the relative form divides by
/// max(max_t |T(t)|, 1e-14). The floor avoids 0/0 on identically-zero
/// densities.
inline Drift drift_of_series(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("drift_of_series: empty series");
    double drift = 0.0, scale = 0.0;
    for (double v : values) {
        drift = std::max(drift, std::abs(v - values.front()));
        scale = std::max(scale, std::abs(v));
    }
    return {drift, drift / std::max(scale, 1e-14)};
}

struct DriftReport {
    std::array<Drift, 8> irrotational;
    std::array<Drift, 7> vorticity;
    Drift hamiltonian;
};

inline DriftReport drift_report(const std::vector<DensitySample>& samples) {
    if (samples.size() < 2)
        throw std::invalid_argument("drift_report: need at least two samples");
    DriftReport rep;
    std::vector<double> series(samples.size());
    for (int i = 0; i < 8; ++i) {
        for (size_t s = 0; s < samples.size(); ++s)
            series[s] = samples[s].irrotational[static_cast<size_t>(i)];
        rep.irrotational[static_cast<size_t>(i)] = drift_of_series(series);
    }
    for (int i = 0; i < 7; ++i) {
        for (size_t s = 0; s < samples.size(); ++s)
            series[s] = samples[s].vorticity[static_cast<size_t>(i)];
        rep.vorticity[static_cast<size_t>(i)] = drift_of_series(series);
    }
    for (size_t s = 0; s < samples.size(); ++s) series[s] = samples[s].hamiltonian;
    rep.hamiltonian = drift_of_series(series);
    return rep;
}

}  // namespace wavecons
