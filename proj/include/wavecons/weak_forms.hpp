#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavecons/densities.hpp"
#include "wavecons/evolution.hpp"
#include "wavecons/extension.hpp"
#include "wavecons/harmonic_polynomials.hpp"

namespace wavecons {

// Orientation convention used for every boundary integral in this library:
// the surface z = eta is traversed in +x, the bottom z = -h in -x, so that
// oriented dx-integrals obey the Green identity ∮ P dx = ∬ dP/dz dA. Outward
// normals: (-eta_x, 1) dx on the surface (Jacobian absorbed), (0, -1) dx on
// the bottom. Lateral seam contributions of oriented dx-integrals vanish
// identically (vertical sides); remaining lateral terms are dropped under the
// decay assumption enforced by the edge guard.

/// Weak-form ledger entry for one snapshot and one test-function degree.
///
/// Irrotational variant (test phi_n):
///   A     = ∮_S dz^{-1}phi_n dx
///   B     = ∮_{dD} phi (sigma3 grad phi_n) . n ds
///   rhs_A = B + 2 ∮_{dD} phi phi_n,z dx
///   rhs_B = static part of dB/dt: surface pressure + Legendre-type terms
///           plus the bottom Q_x^2 term; the remaining bottom d/dt ∮ Q
///           phi_n,z dx is carried separately in bottom_Qphi and time-
///           differenced by the residual evaluator (it is the -∮ p/rho phi_z
///           piece with the Bernoulli phi_t eliminated).
///
/// Constant-vorticity variant (test phi_n, z-derivative inside):
///   A     = ∮_S phi_n(x, eta) dx
///   B     = ∮_S phi (sigma3 grad phi_n,z) . n ds      (surface only)
///   rhs_A = omega ∮ eta eta_x phi_n,z dx + ∮_{dD} phi grad(phi_n,z) . n ds
///   rhs_B = all right-hand terms of the vorticity B evolution (no pressure
///           appears; bottom_Qphi stays zero).
struct WeakFormLedger {
    double t = 0.0;
    int degree = 0;
    Complex A{};
    Complex B{};
    Complex rhs_A{};
    Complex rhs_B{};
    Complex bottom_Qphi{};
};

namespace detail {

/// Per-snapshot traces shared by ledger entries of all degrees.
struct SurfaceTraces {
    RealField eta_x, q_x, Q, Q_x;

    SurfaceTraces(const Snapshot& snap, const HarmonicExtension& ext)
        : eta_x(derivative(snap.state.eta, 1)),
          q_x(derivative(snap.state.q, 1)),
          Q(ext.bottom_trace()),
          Q_x(Q.grid()) {
        Q_x = derivative(Q, 1);
    }
};

inline double kahan_dx_sum(const std::vector<double>& v, double dx) {
    double sum = 0.0, c = 0.0;
    for (double y0 : v) {
        double y = y0 - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return sum * dx;
}

/// ∮ f dx over the surface nodes (values already at z = eta).
inline Complex surface_integral(const PeriodicGrid& grid, const std::vector<Complex>& f) {
    std::vector<double> re(f.size()), im(f.size());
    for (size_t j = 0; j < f.size(); ++j) {
        re[j] = f[j].real();
        im[j] = f[j].imag();
    }
    return {kahan_dx_sum(re, grid.dx()), kahan_dx_sum(im, grid.dx())};
}

}  // namespace detail

/// Ledger entry of the irrotational weak forms at one snapshot. The surface
/// tension variant adds S = -d/dx [ sigma eta_x / sqrt(1+eta_x^2) ] to the
/// pressure head on the free surface.
inline WeakFormLedger weak_form_irrotational(const Snapshot& snap, const HarmonicExtension& ext,
                                             int degree, const PhysicalParams& params) {
    const SurfaceState& state = snap.state;
    const PeriodicGrid& grid = state.eta.grid();
    const HarmonicTestFunction tf(degree);
    const detail::SurfaceTraces tr(snap, ext);
    const int n = grid.n_points;

    RealField Sfield(grid, 0.0);
    if (params.sigma > 0.0) {
        RealField flux(grid);
        for (int j = 0; j < n; ++j)
            flux[j] = params.sigma * tr.eta_x[j] / std::sqrt(1.0 + tr.eta_x[j] * tr.eta_x[j]);
        Sfield = -1.0 * derivative(flux, 1);
    }

    std::vector<Complex> a(static_cast<size_t>(n)), b_s(static_cast<size_t>(n)),
        ra_s(static_cast<size_t>(n)), rb_s(static_cast<size_t>(n)), b_b(static_cast<size_t>(n)),
        ra_b(static_cast<size_t>(n)), rb_b(static_cast<size_t>(n)), qp(static_cast<size_t>(n));

    for (int j = 0; j < n; ++j) {
        const double x = grid.node(j);
        const double e = state.eta[j];
        const double q = state.q[j];
        const double ex = tr.eta_x[j];

        const auto [gx, gz] = tf.eval_gradient(x, e);
        const auto zders = tf.eval_z_derivatives(x, e);
        const Complex phi_z = zders[0], phi_zz = zders[1];

        a[static_cast<size_t>(j)] = tf.eval_z_antiderivative(x, e);
        // (sigma3 grad phi).n ds = (-eta_x phi_x - phi_z) dx on the surface.
        const Complex s3n = -ex * gx - phi_z;
        b_s[static_cast<size_t>(j)] = q * s3n;
        ra_s[static_cast<size_t>(j)] = 2.0 * q * phi_z;
        rb_s[static_cast<size_t>(j)] = -(params.g * e + Sfield[j]) * s3n -
                                       2.0 * q * snap.eta_t[j] * phi_zz;

        // Bottom: (sigma3 grad phi).n ds = +phi_z dx; oriented dx integrals
        // flip sign (-x traversal). Bernoulli gives (p/rho + g z)|bottom =
        // -Q_t - Q_x^2/2; the Q_x^2 part enters rhs_B here, the Q_t part is
        // d/dt of bottom_Qphi.
        const double Q = tr.Q[j];
        const auto zders_b = tf.eval_z_derivatives(x, -ext.depth());
        const Complex phi_z_b = zders_b[0];
        b_b[static_cast<size_t>(j)] = Q * phi_z_b;
        ra_b[static_cast<size_t>(j)] = -2.0 * Q * phi_z_b;
        rb_b[static_cast<size_t>(j)] = 0.5 * tr.Q_x[j] * tr.Q_x[j] * phi_z_b;
        qp[static_cast<size_t>(j)] = Q * phi_z_b;
    }

    WeakFormLedger led;
    led.t = state.t;
    led.degree = degree;
    led.A = detail::surface_integral(grid, a);
    led.B = detail::surface_integral(grid, b_s) + detail::surface_integral(grid, b_b);
    led.rhs_A = led.B + detail::surface_integral(grid, ra_s) + detail::surface_integral(grid, ra_b);
    led.rhs_B = detail::surface_integral(grid, rb_s) + detail::surface_integral(grid, rb_b);
    led.bottom_Qphi = detail::surface_integral(grid, qp);
    return led;
}

/// Ledger entry of the constant-vorticity weak forms at one snapshot. Every
/// term is computable from the snapshot itself (no pressure, no time
/// differences): the bottom Bernoulli function M_B(t) never enters.
inline WeakFormLedger weak_form_vorticity(const Snapshot& snap, const HarmonicExtension& ext,
                                          int degree, const PhysicalParams& params) {
    const SurfaceState& state = snap.state;
    const PeriodicGrid& grid = state.eta.grid();
    const HarmonicTestFunction tf(degree);
    const detail::SurfaceTraces tr(snap, ext);
    const double om = params.omega;
    const int n = grid.n_points;

    const RealField inv_dx_eta =
        om != 0.0 ? decaying_antiderivative(state.eta) : RealField(grid, 0.0);

    std::vector<Complex> a(static_cast<size_t>(n)), b_s(static_cast<size_t>(n)),
        ra(static_cast<size_t>(n)), rb_s(static_cast<size_t>(n)), rb_b(static_cast<size_t>(n));

    for (int j = 0; j < n; ++j) {
        const double x = grid.node(j);
        const double e = state.eta[j];
        const double q = state.q[j];
        const double ex = tr.eta_x[j];
        const double et = snap.eta_t[j];

        const auto zders = tf.eval_z_derivatives(x, e);
        const Complex phi_z = zders[0], phi_zz = zders[1], phi_zzz = zders[2];
        const Complex phi_xz = tf.eval_xz_derivative(x, e);

        a[static_cast<size_t>(j)] = tf.eval(x, e);
        // grad(phi_z) . n ds = (-eta_x phi_xz + phi_zz) dx on the surface.
        ra[static_cast<size_t>(j)] =
            om * e * ex * phi_z + q * (-ex * phi_xz + phi_zz);
        // sigma3 grad(phi_z) . n ds = (-eta_x phi_xz - phi_zz) dx.
        const Complex s3n = -ex * phi_xz - phi_zz;
        b_s[static_cast<size_t>(j)] = q * s3n;
        rb_s[static_cast<size_t>(j)] = -params.g * e * s3n -
                                       om * e * (tr.q_x[j] - 0.5 * om * e) * phi_zz -
                                       om * e * (et - om * e * ex) * phi_xz -
                                       2.0 * (q - om * inv_dx_eta[j]) * et * phi_zzz;

        const auto zders_b = tf.eval_z_derivatives(x, -ext.depth());
        const Complex phi_zz_b = zders_b[1];
        // Bottom pieces of rhs_A (grad(phi_z).n = -phi_zz) and rhs_B.
        ra[static_cast<size_t>(j)] += -tr.Q[j] * phi_zz_b;
        rb_b[static_cast<size_t>(j)] = 0.5 * tr.Q_x[j] * tr.Q_x[j] * phi_zz_b;
    }

    WeakFormLedger led;
    led.t = state.t;
    led.degree = degree;
    led.A = detail::surface_integral(grid, a);
    led.B = detail::surface_integral(grid, b_s);
    led.rhs_A = detail::surface_integral(grid, ra);
    led.rhs_B = detail::surface_integral(grid, rb_s) + detail::surface_integral(grid, rb_b);
    led.bottom_Qphi = {0.0, 0.0};
    return led;
}

struct IdentityResidual {
    std::string id;
    int degree = 0;
    double residual = 0.0;
    double scale = 1.0;
};

/// Residual of dA/dt = rhs_A over a uniformly spaced ledger series, centered
/// differences at the interior samples, worst case reported. Normalized by
/// max(1, |B|, |A|/dt).
inline IdentityResidual weak_residual_A(const std::vector<WeakFormLedger>& series,
                                        double dt_observer, const std::string& id = "weakA") {
    if (series.size() < 3)
        throw std::invalid_argument("weak_residual_A: need at least 3 consecutive ledgers");
    IdentityResidual out{id, series.front().degree, 0.0, 1.0};
    for (size_t k = 1; k + 1 < series.size(); ++k) {
        const Complex dA = (series[k + 1].A - series[k - 1].A) / (2.0 * dt_observer);
        const double scale = std::max(
            {1.0, std::abs(series[k].B), std::abs(series[k].A) / dt_observer});
        const double res = std::abs(dA - series[k].rhs_A) / scale;
        if (res > out.residual) {
            out.residual = res;
            out.scale = scale;
        }
    }
    return out;
}

/// Residual of dB/dt = rhs_B (+ d/dt of the bottom Q phi_z ledger for the
/// irrotational variant), centered differences, worst case reported.
inline IdentityResidual weak_residual_B(const std::vector<WeakFormLedger>& series,
                                        double dt_observer, const std::string& id = "weakB") {
    if (series.size() < 3)
        throw std::invalid_argument("weak_residual_B: need at least 3 consecutive ledgers");
    IdentityResidual out{id, series.front().degree, 0.0, 1.0};
    for (size_t k = 1; k + 1 < series.size(); ++k) {
        const Complex dB = (series[k + 1].B - series[k - 1].B) / (2.0 * dt_observer);
        const Complex dQphi =
            (series[k + 1].bottom_Qphi - series[k - 1].bottom_Qphi) / (2.0 * dt_observer);
        const Complex rhs = series[k].rhs_B + dQphi;
        const double scale =
            std::max({1.0, std::abs(rhs), std::abs(series[k].B) / dt_observer});
        const double res = std::abs(dB - rhs) / scale;
        if (res > out.residual) {
            out.residual = res;
            out.scale = scale;
        }
    }
    return out;
}

}  // namespace wavecons
