#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include "wavecons/spectral.hpp"

namespace wavecons {

/// Harmonic polynomial test function phi_n(x, z) = (x + iz)^n / n!.
///
/// These generate the weak-form ledgers and the Green-identity hierarchy.
/// Degrees 0..3 exhaust the conservation laws handled here; the type accepts
/// any small nonnegative degree.
class HarmonicTestFunction {
  public:
    explicit HarmonicTestFunction(int degree) : degree_(degree) {
        if (degree < 0 || degree > 8)
            throw std::invalid_argument("HarmonicTestFunction: degree out of range: " +
                                        std::to_string(degree));
    }

    int degree() const { return degree_; }

    /// (x + iz)^n / n!, with the convention phi_m = 0 for m < 0.
    Complex eval(double x, double z) const { return poly(degree_, x, z); }

    /// Gradient (d/dx, d/dz) = (phi_{n-1}, i phi_{n-1}).
    std::pair<Complex, Complex> eval_gradient(double x, double z) const {
        const Complex p = poly(degree_ - 1, x, z);
        return {p, Complex(0.0, 1.0) * p};
    }

    /// sigma3-twisted gradient (d/dx, -d/dz); sigma3 = diag(1, -1).
    std::pair<Complex, Complex> eval_sigma3_gradient(double x, double z) const {
        auto [gx, gz] = eval_gradient(x, z);
        return {gx, -gz};
    }

    /// Antiderivative in z vanishing on z = 0:
    /// P(x, z) = (1/i) [phi_{n+1}(x, z) - phi_{n+1}(x, 0)].
    Complex eval_z_antiderivative(double x, double z) const {
        const Complex i(0.0, 1.0);
        return (poly(degree_ + 1, x, z) - poly(degree_ + 1, x, 0.0)) / i;
    }

    /// (phi_z, phi_zz, phi_zzz) = (i phi_{n-1}, i^2 phi_{n-2}, i^3 phi_{n-3}).
    std::array<Complex, 3> eval_z_derivatives(double x, double z) const {
        const Complex i(0.0, 1.0);
        return {i * poly(degree_ - 1, x, z), -poly(degree_ - 2, x, z),
                -i * poly(degree_ - 3, x, z)};
    }

    /// d/dx of phi_z, needed by the vorticity weak form (phi_xz = i phi_{n-2}).
    Complex eval_xz_derivative(double x, double z) const {
        return Complex(0.0, 1.0) * poly(degree_ - 2, x, z);
    }

  private:
    static Complex poly(int m, double x, double z) {
        if (m < 0) return {0.0, 0.0};
        Complex p(1.0, 0.0);
        const Complex w(x, z);
        double fact = 1.0;
        for (int j = 1; j <= m; ++j) {
            p *= w;
            fact *= j;
        }
        return p / fact;
    }

    int degree_;
};

}  // namespace wavecons
