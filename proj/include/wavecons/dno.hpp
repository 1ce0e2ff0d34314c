#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavecons/spectral.hpp"

namespace wavecons {

namespace detail {

/// Apply the Fourier multiplier for the j-th vertical derivative of the
/// harmonic extension evaluated at z = 0, on the flat-surface profile
/// cosh(k(z+h))/cosh(kh):
///   j even:  |k|^j
///   j odd:   |k|^{j-1} * |k| tanh(|k| h)
inline RealField z_derivative_multiplier(const RealField& f, int j, double h) {
    if (j == 0) return f;
    const int n = f.size();
    Spectrum c = spectrum(f);
    for (int m = 0; m < n; ++m) {
        const double k = std::abs(wavenumber(f.grid(), m));
        double mult = 1.0;
        if (j % 2 == 0) {
            mult = std::pow(k, j);
        } else {
            mult = std::pow(k, j - 1) * k * std::tanh(k * h);
        }
        c[static_cast<size_t>(m)] *= mult;
    }
    return from_spectrum(f.grid(), c);
}

inline RealField maybe_dealias(const RealField& f, bool enabled) {
    return enabled ? dealias(f) : f;
}

}  // namespace detail

/// Dirichlet-Neumann operator G(eta) q = (phi_z - eta_x phi_x)|_{z=eta} for
/// the harmonic extension of q with an impermeable flat bottom at z = -h,
/// truncated at Taylor order M about eta = 0.
///
/// The surface value phi0 = phi(x, 0) is recovered order by order from
///   q = sum_j eta^j/j! d_z^j phi(x, 0),
/// where every z-derivative at z = 0 reduces to the Fourier multipliers
/// above; G(eta) q is then assembled from the same expansion. Each pointwise
/// product is dealiased when requested.
inline RealField dno_apply(const RealField& eta, const RealField& q, double h, int order,
                           bool use_dealias = true) {
    if (order < 0 || order > 8)
        throw std::invalid_argument("dno_apply: order must lie in 0..8, got " +
                                    std::to_string(order));
    require_same_grid(eta, q, "dno_apply");
    if (!(eta.max_abs() < h))
        throw std::invalid_argument("dno_apply: max|eta| must stay below the depth h");

    const PeriodicGrid& grid = eta.grid();
    const RealField eta_d = detail::maybe_dealias(eta, use_dealias);
    const RealField eta_x = derivative(eta_d, 1);

    // eta^j / j!, dealiased as they are built.
    std::vector<RealField> eta_pow;
    eta_pow.reserve(static_cast<size_t>(order) + 1);
    eta_pow.emplace_back(grid, 1.0);
    for (int j = 1; j <= order; ++j) {
        RealField next = (1.0 / j) * (eta_pow.back() * eta_d);
        eta_pow.push_back(detail::maybe_dealias(next, use_dealias));
    }

    // phi0 expansion: phi0[m] is the order-m correction to phi(x, 0).
    std::vector<RealField> phi0;
    phi0.reserve(static_cast<size_t>(order) + 1);
    phi0.push_back(detail::maybe_dealias(q, use_dealias));
    for (int m = 1; m <= order; ++m) {
        RealField corr(grid, 0.0);
        for (int j = 1; j <= m; ++j) {
            RealField term =
                eta_pow[static_cast<size_t>(j)] *
                detail::z_derivative_multiplier(phi0[static_cast<size_t>(m - j)], j, h);
            corr = corr + detail::maybe_dealias(term, use_dealias);
        }
        phi0.push_back(-1.0 * corr);
    }

    // G q = sum_m [ sum_j eta^j/j! d_z^{j+1} phi0^{(m-j)}
    //               - eta_x sum_j eta^j/j! d_x d_z^j phi0^{(m-1-j)} ].
    RealField result(grid, 0.0);
    for (int m = 0; m <= order; ++m) {
        for (int j = 0; j <= m; ++j) {
            RealField term =
                eta_pow[static_cast<size_t>(j)] *
                detail::z_derivative_multiplier(phi0[static_cast<size_t>(m - j)], j + 1, h);
            result = result + detail::maybe_dealias(term, use_dealias);
        }
        for (int j = 0; j <= m - 1; ++j) {
            RealField dphi = derivative(
                detail::z_derivative_multiplier(phi0[static_cast<size_t>(m - 1 - j)], j, h), 1);
            RealField term = detail::maybe_dealias(eta_pow[static_cast<size_t>(j)] * dphi,
                                                   use_dealias);
            result = result - detail::maybe_dealias(eta_x * term, use_dealias);
        }
    }
    return result;
}

}  // namespace wavecons
