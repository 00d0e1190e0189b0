#pragma once

#include <stdexcept>

namespace elastoball {

/// Lame coefficients of the material plus the reference density of the
/// unstressed configuration.
struct LameParameters {
    double lambda = 1.0;     // first Lame coefficient, pressure units
    double mu = 1.0;         // shear modulus, pressure units
    double kappa_ref = 1.0;  // reference density K, mass/volume

    double p_wave() const { return lambda + 2.0 * mu; }   // strong ellipticity modulus
    double bulk3() const { return 3.0 * lambda + 2.0 * mu; }

    /// mu >= 0, lambda + 2 mu > 0, kappa_ref > 0. With strict_bulk also
    /// 3 lambda + 2 mu > 0 (positive bulk modulus).
    void validate(bool strict_bulk = false) const {
        if (!(mu >= 0.0)) throw std::invalid_argument("LameParameters: mu must be >= 0");
        if (!(p_wave() > 0.0))
            throw std::invalid_argument("LameParameters: lambda + 2 mu must be > 0");
        if (!(kappa_ref > 0.0))
            throw std::invalid_argument("LameParameters: kappa_ref must be > 0");
        if (strict_bulk && !(bulk3() > 0.0))
            throw std::invalid_argument("LameParameters: 3 lambda + 2 mu must be > 0");
    }
};

}  // namespace elastoball
