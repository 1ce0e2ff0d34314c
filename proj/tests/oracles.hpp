#pragma once

// Independent numerical oracles for the test suite. Everything here stays
// deliberately dumb and separate from the library's spectral machinery:
// composite Simpson quadrature, central differences, a small eigenproblem
// for the linearized surface system, and a two-exponential Prony fit.

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "wavecons/grid.hpp"

namespace oracles {

/// Composite Simpson on periodic samples (even count, f_n = f_0).
inline double simpson_periodic(const std::vector<double>& f, double dx) {
    const size_t n = f.size();
    if (n % 2 != 0) throw std::invalid_argument("simpson_periodic: need even sample count");
    double sum = 0.0;
    for (size_t j = 0; j < n; j += 2) {
        const double f0 = f[j];
        const double f1 = f[(j + 1) % n];
        const double f2 = f[(j + 2) % n];
        sum += f0 + 4.0 * f1 + f2;
    }
    return sum * dx / 3.0;
}

template <typename F>
double central_diff(F&& f, double x, double step = 1e-5) {
    return (f(x + step) - f(x - step)) / (2.0 * step);
}

template <typename F>
std::complex<double> central_diff_c(F&& f, double x, double step = 1e-5) {
    return (f(x + step) - f(x - step)) / (2.0 * step);
}

/// 5-point Laplacian of a scalar function of (x, z).
template <typename F>
double laplacian(F&& f, double x, double z, double step = 1e-4) {
    return (f(x + step, z) + f(x - step, z) + f(x, z + step) + f(x, z - step) -
            4.0 * f(x, z)) /
           (step * step);
}

/// Angular frequencies of the linearized finite-depth system with constant
/// vorticity for one Fourier mode k, via a real 4x4 eigenproblem in
/// (Re eta_k, Im eta_k, Re q_k, Im q_k):
///   eta_k' = G0 q_k,   q_k' = -g eta_k - i (omega G0 / k) q_k,
/// G0 = k tanh(k h). Returns the two nonnegative frequencies sorted.
inline std::array<double, 2> linear_shear_frequencies(double k, double g, double h,
                                                      double omega) {
    const double G0 = k * std::tanh(k * h);
    Eigen::Matrix4d M = Eigen::Matrix4d::Zero();
    // State u = (br, bi, ar, ai); b = eta_k, a = q_k.
    M(0, 2) = G0;
    M(1, 3) = G0;
    M(2, 0) = -g;
    M(3, 1) = -g;
    const double c = omega * G0 / k;
    // -i c a: real part -> +c ai, imag part -> -c ar.
    M(2, 3) = c;
    M(3, 2) = -c;
    Eigen::EigenSolver<Eigen::Matrix4d> es(M);
    std::vector<double> freqs;
    for (int i = 0; i < 4; ++i) freqs.push_back(std::abs(es.eigenvalues()[i].imag()));
    std::sort(freqs.begin(), freqs.end());
    // Eigenvalues come in +-i Omega pairs; pick the two distinct magnitudes.
    return {freqs[0], freqs[2]};
}

/// Prony fit of a complex series s_m = c1 z1^m + c2 z2^m sampled at spacing
/// dt; returns the two frequencies |arg z| / dt sorted ascending.
inline std::array<double, 2> prony_two_frequencies(const std::vector<std::complex<double>>& s,
                                                   double dt) {
    using C = std::complex<double>;
    const size_t n = s.size();
    if (n < 6) throw std::invalid_argument("prony_two_frequencies: series too short");
    // Least squares for s_{m+2} = p s_{m+1} + r s_m.
    C a11{}, a12{}, a22{}, b1{}, b2{};
    for (size_t m = 0; m + 2 < n; ++m) {
        const C x1 = s[m + 1], x2 = s[m], y = s[m + 2];
        a11 += std::conj(x1) * x1;
        a12 += std::conj(x1) * x2;
        a22 += std::conj(x2) * x2;
        b1 += std::conj(x1) * y;
        b2 += std::conj(x2) * y;
    }
    const C det = a11 * a22 - a12 * std::conj(a12);
    const C p = (b1 * a22 - a12 * b2) / det;
    const C r = (a11 * b2 - std::conj(a12) * b1) / det;
    const C disc = std::sqrt(p * p + 4.0 * r);
    const C z1 = 0.5 * (p + disc);
    const C z2 = 0.5 * (p - disc);
    std::array<double, 2> out{std::abs(std::arg(z1)) / dt, std::abs(std::arg(z2)) / dt};
    if (out[0] > out[1]) std::swap(out[0], out[1]);
    return out;
}

/// Deterministic band-limited random field for property-style tests.
inline wavecons::RealField random_band_limited(const wavecons::PeriodicGrid& grid,
                                               unsigned seed, int max_mode, double amp = 1.0) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    wavecons::RealField f(grid);
    for (int m = 1; m <= max_mode; ++m) {
        const double a = amp * dist(gen);
        const double b = amp * dist(gen);
        const double k = 2.0 * M_PI * m / grid.length;
        for (int j = 0; j < grid.n_points; ++j) {
            const double x = grid.node(j);
            f[j] += a * std::cos(k * x) + b * std::sin(k * x);
        }
    }
    return f;
}

}  // namespace oracles
