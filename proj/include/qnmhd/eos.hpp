#pragma once

#include <cmath>
#include <string>

#include "qnmhd/errors.hpp"

namespace qnmhd {

// gamma-law constitutive relations: p(n) = n^gamma / gamma, h'(n) = p'(n)/n,
// with the enthalpy normalized so h(1) = 0 (only grad h enters the dynamics).

inline void require_positive_density(double n, const char* who) {
    if (!(n > 0.0))
        throw VacuumError(std::string(who) + ": nonpositive density " + std::to_string(n));
}

inline double pressure(double n, double gamma) {
    require_positive_density(n, "pressure");
    return std::pow(n, gamma) / gamma;
}

inline double pressure_prime(double n, double gamma) {
    require_positive_density(n, "pressure_prime");
    return std::pow(n, gamma - 1.0);
}

inline double enthalpy(double n, double gamma) {
    require_positive_density(n, "enthalpy");
    return (std::pow(n, gamma - 1.0) - 1.0) / (gamma - 1.0);
}

inline double enthalpy_prime(double n, double gamma) {
    require_positive_density(n, "enthalpy_prime");
    return std::pow(n, gamma - 2.0);
}

} // namespace qnmhd
