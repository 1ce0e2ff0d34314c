#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "wavecons/extension.hpp"
#include "wavecons/grid.hpp"
#include "wavecons/params.hpp"

namespace wavecons {

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre polynomial. Plenty for the smooth vertical profiles integrated
/// here.
struct GaussLegendre {
    std::vector<double> nodes, weights;

    explicit GaussLegendre(int n) {
        if (n < 2) throw std::invalid_argument("GaussLegendre: need at least 2 nodes");
        nodes.resize(static_cast<size_t>(n));
        weights.resize(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int j = 2; j <= n; ++j) {
                    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            nodes[static_cast<size_t>(i)] = x;
            weights[static_cast<size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

/// The eight bulk integrals over the fluid domain D = { -h < z < eta(x) }:
///
///   I1* = ∬ u            I2* = ∬ (u^2+v^2)/2 + g z
///   I3* = ∬ 1 (area)     I4* = ∬ v
///   I5* = ∬ x            I6* = ∬ z
///   I7* = ∬ v_x - u_z    I8* = ∬ x v - z u
///
/// Tensor quadrature: spectral/trapezoid in x, Gauss-Legendre with nz nodes
/// per column in z, mapped to (-h, eta(x)). Deterministic summation order.
inline std::array<double, 8> bulk_integrals(const HarmonicExtension& ext, const RealField& eta,
                                            const PhysicalParams& params, int nz = 32) {
    if (nz < 8) throw std::invalid_argument("bulk_integrals: nz must be at least 8");
    if (!(eta.grid() == ext.grid()))
        throw std::invalid_argument("bulk_integrals: eta grid does not match extension grid");
    const PeriodicGrid& grid = ext.grid();
    const GaussLegendre gl(nz);
    const double h = ext.depth();
    const double om = params.omega;

    std::array<double, 8> acc{};
    for (int j = 0; j < grid.n_points; ++j) {
        const double x = grid.node(j);
        const double zc = 0.5 * (eta[j] + (-h));       // column midpoint
        const double half = 0.5 * (eta[j] - (-h));     // column half-height
        std::array<double, 8> col{};
        for (int m = 0; m < nz; ++m) {
            const double z = zc + half * gl.nodes[static_cast<size_t>(m)];
            const double w = gl.weights[static_cast<size_t>(m)] * half;
            const BulkSample s = ext.eval_potential(x, z);
            const double u = s.phi_x - om * z;
            const double v = s.phi_z;
            const double vx = s.phi_xz;          // v_x
            const double uz = s.phi_xz - om;     // u_z = phi_xz - omega
            col[0] += w * u;
            col[1] += w * (0.5 * (u * u + v * v) + params.g * z);
            col[2] += w;
            col[3] += w * v;
            col[4] += w * x;
            col[5] += w * z;
            col[6] += w * (vx - uz);
            col[7] += w * (x * v - z * u);
        }
        for (int i = 0; i < 8; ++i) acc[static_cast<size_t>(i)] += col[static_cast<size_t>(i)];
    }
    const double dx = grid.dx();
    for (double& a : acc) a *= dx;
    return acc;
}

}  // namespace wavecons
