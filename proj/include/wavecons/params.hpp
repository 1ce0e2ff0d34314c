#pragma once

#include <cmath>
#include <stdexcept>

namespace wavecons {

/// Physical constants of the water-wave problem. omega is the constant
/// vorticity of the linear shear; sigma the kinematic surface-tension
/// coefficient.
struct PhysicalParams {
    double g = 1.0;      // gravity
    double h = 1.0;      // still-water depth
    double rho = 1.0;    // density
    double omega = 0.0;  // constant vorticity
    double sigma = 0.0;  // surface tension

    void validate() const {
        if (!(g > 0.0) || !(h > 0.0) || !(rho > 0.0))
            throw std::invalid_argument("PhysicalParams: g, h, rho must be positive");
        if (!(sigma >= 0.0))
            throw std::invalid_argument("PhysicalParams: sigma must be nonnegative");
        if (!std::isfinite(omega))
            throw std::invalid_argument("PhysicalParams: omega must be finite");
    }
};

}  // namespace wavecons
