#pragma once

#include <cmath>
#include <stdexcept>

namespace pslbm {

// Isotropic linear elastic material under plane strain.
struct Material {
    double lambda = 0.0;  // first Lame parameter
    double mu = 0.0;      // shear modulus
    double rho = 0.0;     // density

    double cd() const { return std::sqrt((lambda + 2.0 * mu) / rho); }
    double cs() const { return std::sqrt(mu / rho); }

    // Build from shear wave speed, speed ratio cs/cd, and shear modulus.
    static Material from_wave_speeds(double cs, double cs_over_cd, double mu) {
        if (!(cs > 0.0) || !(mu > 0.0) || !(cs_over_cd > 0.0) || !(cs_over_cd < 1.0)) {
            throw std::invalid_argument("material: need cs > 0, mu > 0, 0 < cs/cd < 1");
        }
        Material m;
        m.mu = mu;
        m.rho = mu / (cs * cs);
        const double cd = cs / cs_over_cd;
        // ratio < 1 keeps lambda + mu > 0, so the material stays positive
        // definite even when lambda itself is negative.
        m.lambda = m.rho * cd * cd - 2.0 * mu;
        return m;
    }
};

}  // namespace pslbm
