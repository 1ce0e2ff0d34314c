#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wavecons/grid.hpp"
#include "wavecons/params.hpp"
#include "wavecons/spectral.hpp"

namespace wavecons {

/// Potential and derivatives of the harmonic extension at one bulk point,
/// together with the physical velocities and kinematic pressure when filled.
struct BulkSample {
    double x = 0.0, z = 0.0;
    double phi = 0.0, phi_x = 0.0, phi_z = 0.0, phi_xx = 0.0, phi_xz = 0.0;
    double u = 0.0, v = 0.0;
    double p_over_rho = 0.0;
};

/// Harmonic extension of surface data into the fluid bulk:
///
///   phi(x, z) = a_0 + sum_k [a_k cos(kx) + b_k sin(kx)] cosh(k(z+h))/cosh(kh)
///
/// Every mode satisfies Laplace's equation and phi_z(x, -h) = 0 by
/// construction; the coefficients are fit so that phi(x, eta(x)) matches a
/// prescribed surface trace by collocation at the grid nodes.
class HarmonicExtension {
  public:
    HarmonicExtension(const PeriodicGrid& grid, double depth)
        : grid_(grid), depth_(depth),
          cos_coeff_(static_cast<size_t>(grid.n_points / 2 + 1), 0.0),
          sin_coeff_(static_cast<size_t>(grid.n_points / 2 + 1), 0.0) {
        if (!(depth > 0.0)) throw std::invalid_argument("HarmonicExtension: depth must be positive");
    }

    const PeriodicGrid& grid() const { return grid_; }
    double depth() const { return depth_; }
    int n_modes() const { return grid_.n_points / 2 + 1; }

    double cos_coeff(int m) const { return cos_coeff_[static_cast<size_t>(m)]; }
    double sin_coeff(int m) const { return sin_coeff_[static_cast<size_t>(m)]; }
    double& cos_coeff(int m) { return cos_coeff_[static_cast<size_t>(m)]; }
    double& sin_coeff(int m) { return sin_coeff_[static_cast<size_t>(m)]; }

    double wavenumber_of_mode(int m) const { return 2.0 * M_PI * m / grid_.length; }

    /// Vertical profile C_k(z) = cosh(k(z+h))/cosh(kh) in overflow-safe form.
    double profile(int m, double z) const {
        const double k = wavenumber_of_mode(m);
        return std::exp(k * z) * (1.0 + std::exp(-2.0 * k * (z + depth_))) /
               (1.0 + std::exp(-2.0 * k * depth_));
    }

    /// d/dz of the profile: k sinh(k(z+h))/cosh(kh).
    double profile_dz(int m, double z) const {
        const double k = wavenumber_of_mode(m);
        return k * std::exp(k * z) * (1.0 - std::exp(-2.0 * k * (z + depth_))) /
               (1.0 + std::exp(-2.0 * k * depth_));
    }

    /// phi and first/second derivatives from the termwise-differentiated series.
    BulkSample eval_potential(double x, double z) const {
        BulkSample s;
        s.x = x;
        s.z = z;
        const int nm = n_modes();
        const double k1 = 2.0 * M_PI / grid_.length;
        // Angle-addition recurrence for cos(m k1 x), sin(m k1 x).
        const double c1 = std::cos(k1 * x), s1 = std::sin(k1 * x);
        double cm = 1.0, sm = 0.0;
        s.phi = cos_coeff_[0];
        for (int m = 1; m < nm; ++m) {
            const double cn = cm * c1 - sm * s1;
            const double sn = sm * c1 + cm * s1;
            cm = cn;
            sm = sn;
            const double a = cos_coeff_[static_cast<size_t>(m)];
            const double b = sin_coeff_[static_cast<size_t>(m)];
            if (a == 0.0 && b == 0.0) continue;
            const double k = k1 * m;
            const double C = profile(m, z);
            const double V = profile_dz(m, z);
            const double trig = a * cm + b * sm;        // radial part
            const double trig_x = k * (b * cm - a * sm);  // d/dx of trig
            s.phi += trig * C;
            s.phi_x += trig_x * C;
            s.phi_z += trig * V;
            s.phi_xx += -k * k * trig * C;
            s.phi_xz += trig_x * V;
        }
        return s;
    }

    /// Trace of the extension on the bottom z = -h, sampled on the grid.
    RealField bottom_trace() const { return trace_at_depth(-depth_); }

    /// Trace phi(x_j, z_j) for per-node heights z_j (z = eta for the surface).
    RealField trace(const RealField& z_of_x) const {
        RealField out(grid_);
        for (int j = 0; j < grid_.n_points; ++j)
            out[j] = eval_potential(grid_.node(j), z_of_x[j]).phi;
        return out;
    }

    RealField trace_at_depth(double z) const {
        RealField out(grid_);
        for (int j = 0; j < grid_.n_points; ++j) out[j] = eval_potential(grid_.node(j), z).phi;
        return out;
    }

  private:
    PeriodicGrid grid_;
    double depth_ = 1.0;
    std::vector<double> cos_coeff_, sin_coeff_;
};

/// Physical velocities of the (possibly sheared) flow reconstructed from the
/// pseudo-potential: u = phi_x - omega z, v = phi_z. For omega = 0 this is the
/// irrotational velocity field.
inline std::pair<double, double> physical_velocities(const HarmonicExtension& ext, double omega,
                                                     double x, double z) {
    const BulkSample s = ext.eval_potential(x, z);
    return {s.phi_x - omega * z, s.phi_z};
}

/// Collocation fit of the harmonic extension to a surface trace q on z = eta.
///
/// The vertical profiles are fixed by the bottom condition, so the trace
/// condition is a dense linear system in the mode coefficients. Solved by LU
/// with iterative refinement until the collocation residual passes tol.
inline HarmonicExtension fit_extension(const RealField& eta, const RealField& q, double h,
                                       double tol = 1e-10, int max_iter = 8) {
    require_same_grid(eta, q, "fit_extension");
    const PeriodicGrid& grid = eta.grid();
    const int n = grid.n_points;
    const double eta_max = eta.max_abs();
    if (!(eta_max < h))
        throw std::invalid_argument("fit_extension: surface touches the bottom (max|eta| >= h)");

    // Mode-growth guard: amplification cosh(k(h+eta))/cosh(kh) beyond 1e8
    // means the surface is too steep/underresolved for this basis.
    const double k_max = 2.0 * M_PI * (n / 2) / grid.length;
    const double amplification = std::exp(k_max * eta_max);
    if (amplification > 1e8)
        throw std::runtime_error("fit_extension: mode amplification " +
                                 std::to_string(amplification) +
                                 " exceeds 1e8; surface too steep for the cosh basis");

    HarmonicExtension ext(grid, h);
    const int nm = ext.n_modes();

    // Column layout: [a_0, a_1, b_1, ..., a_{n/2-1}, b_{n/2-1}, a_{n/2}].
    Eigen::MatrixXd A(n, n);
    for (int j = 0; j < n; ++j) {
        const double x = grid.node(j);
        const double z = eta[j];
        A(j, 0) = 1.0;
        int col = 1;
        for (int m = 1; m < nm; ++m) {
            const double k = ext.wavenumber_of_mode(m);
            const double C = ext.profile(m, z);
            if (m < nm - 1) {
                A(j, col++) = std::cos(k * x) * C;
                A(j, col++) = std::sin(k * x) * C;
            } else {
                A(j, col++) = std::cos(k * x) * C;  // Nyquist keeps cosine only
            }
        }
    }

    Eigen::VectorXd rhs(n);
    for (int j = 0; j < n; ++j) rhs(j) = q[j];

    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    Eigen::VectorXd c = lu.solve(rhs);

    const double target = tol * std::max(1.0, q.max_abs());
    double resid = (A * c - rhs).cwiseAbs().maxCoeff();
    int iter = 0;
    while (resid > target && iter < max_iter) {
        c += lu.solve(rhs - A * c);
        resid = (A * c - rhs).cwiseAbs().maxCoeff();
        ++iter;
    }
    if (resid > target)
        throw std::runtime_error("fit_extension: collocation residual " + std::to_string(resid) +
                                 " did not reach tolerance after " + std::to_string(max_iter) +
                                 " refinements");

    ext.cos_coeff(0) = c(0);
    int col = 1;
    for (int m = 1; m < nm; ++m) {
        if (m < nm - 1) {
            ext.cos_coeff(m) = c(col++);
            ext.sin_coeff(m) = c(col++);
        } else {
            ext.cos_coeff(m) = c(col++);
        }
    }
    return ext;
}

/// Kinematic pressure p/rho = -phi_t - |grad phi|^2/2 - g z from the bulk
/// Bernoulli relation (irrotational flow). phi_t comes from a centered time
/// difference of stored extensions, keeping the pressure independent of the
/// surface evolution formulas it is used to audit.
inline double bulk_pressure_irrotational(const HarmonicExtension& ext_prev,
                                         const HarmonicExtension& ext_now,
                                         const HarmonicExtension& ext_next, double dt,
                                         const PhysicalParams& params, double x, double z) {
    const BulkSample now = ext_now.eval_potential(x, z);
    const double phi_t =
        (ext_next.eval_potential(x, z).phi - ext_prev.eval_potential(x, z).phi) / (2.0 * dt);
    return -phi_t - 0.5 * (now.phi_x * now.phi_x + now.phi_z * now.phi_z) - params.g * z;
}

}  // namespace wavecons
