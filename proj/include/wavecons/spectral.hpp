#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "wavecons/grid.hpp"

namespace wavecons {

using Complex = std::complex<double>;
using Spectrum = std::vector<Complex>;

namespace detail {

// One FFT engine per thread; Eigen caches plans per transform size inside it.
inline Eigen::FFT<double>& fft_engine() {
    thread_local Eigen::FFT<double> engine;
    return engine;
}

}  // namespace detail

/// Signed mode index for spectrum slot j: 0..n/2-1, then -n/2..-1.
inline int mode_index(int j, int n) { return j < n / 2 ? j : j - n; }

/// Angular wavenumber of spectrum slot j.
inline double wavenumber(const PeriodicGrid& grid, int j) {
    return 2.0 * M_PI / grid.length * mode_index(j, grid.n_points);
}

/// Forward transform, unnormalized: c_k = sum_j f_j e^{-i k x_j-ish phase}.
/// The inverse applies the 1/n factor. All identities in this library are
/// stated (and tested) under this normalization.
inline Spectrum spectrum(const RealField& f) {
    const int n = f.size();
    std::vector<Complex> in(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) in[static_cast<size_t>(j)] = f[j];
    Spectrum out;
    detail::fft_engine().fwd(out, in);
    return out;
}

inline RealField from_spectrum(const PeriodicGrid& grid, const Spectrum& c) {
    if (static_cast<int>(c.size()) != grid.n_points)
        throw std::invalid_argument("from_spectrum: coefficient count does not match grid");
    std::vector<Complex> out;
    detail::fft_engine().inv(out, c);
    RealField r(grid);
    for (int j = 0; j < grid.n_points; ++j) r[j] = out[static_cast<size_t>(j)].real();
    return r;
}

/// Spectral derivative of order 1..3. Exact on resolved modes; the Nyquist
/// mode is zeroed for odd orders (its sign is ambiguous on a real grid).
inline RealField derivative(const RealField& f, int order) {
    if (order < 1 || order > 3)
        throw std::invalid_argument("derivative: order must be 1, 2 or 3, got " +
                                    std::to_string(order));
    const int n = f.size();
    Spectrum c = spectrum(f);
    for (int j = 0; j < n; ++j) {
        if (order % 2 == 1 && j == n / 2) {
            c[static_cast<size_t>(j)] = 0.0;
            continue;
        }
        const Complex ik(0.0, wavenumber(f.grid(), j));
        Complex m = ik;
        for (int p = 1; p < order; ++p) m *= ik;
        c[static_cast<size_t>(j)] *= m;
    }
    return from_spectrum(f.grid(), c);
}

/// Periodic antiderivative with zero mean. Exists only for zero-mean input:
/// the k = 0 mode is checked against mean_tolerance and then dropped.
inline RealField antiderivative(const RealField& f, double mean_tolerance = 1e-10) {
    const double m = mean(f);
    const double scale = f.max_abs();
    if (std::abs(m) > mean_tolerance * scale)
        throw std::invalid_argument(
            "antiderivative: input mean " + std::to_string(m) +
            " exceeds tolerance; periodic antiderivative requires zero-mean input");
    const int n = f.size();
    Spectrum c = spectrum(f);
    c[0] = 0.0;
    c[static_cast<size_t>(n / 2)] = 0.0;
    for (int j = 1; j < n; ++j) {
        if (j == n / 2) continue;
        const Complex ik(0.0, wavenumber(f.grid(), j));
        c[static_cast<size_t>(j)] /= ik;
    }
    return from_spectrum(f.grid(), c);
}

/// 2/3-rule projection: zero every mode with |index| > n/3. Idempotent.
inline RealField dealias(const RealField& f) {
    const int n = f.size();
    const int cutoff = n / 3;  // keep |m| <= floor(n/3)
    Spectrum c = spectrum(f);
    for (int j = 0; j < n; ++j) {
        if (std::abs(mode_index(j, n)) > cutoff) c[static_cast<size_t>(j)] = 0.0;
    }
    return from_spectrum(f.grid(), c);
}

/// Pointwise product with the 2/3-rule applied afterwards.
inline RealField dealiased_product(const RealField& a, const RealField& b) {
    return dealias(a * b);
}

/// sum_j f_j^2 * dx, the physical-space side of the Parseval identity.
inline double energy_physical(const RealField& f) {
    double s = 0.0;
    for (double v : f.samples()) s += v * v;
    return s * f.grid().dx();
}

/// (L / n^2) sum_k |c_k|^2, the spectral side under this normalization.
inline double energy_spectral(const RealField& f) {
    Spectrum c = spectrum(f);
    double s = 0.0;
    for (const Complex& z : c) s += std::norm(z);
    const int n = f.size();
    return s * f.grid().length / (static_cast<double>(n) * n);
}

}  // namespace wavecons
