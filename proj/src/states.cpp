#include "qnmhd/states.hpp"

#include <cmath>

#include "qnmhd/errors.hpp"

namespace qnmhd {

void validate_plasma_state(const Grid& g, const PlasmaState& w) {
    double nmin = w.n[0];
    for (double x : w.n.v) nmin = std::min(nmin, x);
    if (!(nmin > 0.0))
        throw VacuumError("plasma state has nonpositive density (min n = " +
                          std::to_string(nmin) + ")");
    const double m = spectral::mean(g, w.n);
    if (std::abs(m - 1.0) > 1e-10)
        throw SolvabilityError("plasma state density mean is " + std::to_string(m) +
                               ", expected 1");
    if (spectral::relative_div(g, w.B) > 1e-10)
        throw SolvabilityError("plasma state magnetic field is not solenoidal");
}

void validate_mhd_state(const Grid& g, const MhdState& s) {
    if (spectral::relative_div(g, s.u) > 1e-10)
        throw SolvabilityError("mhd state velocity is not solenoidal");
    if (spectral::relative_div(g, s.B) > 1e-10)
        throw SolvabilityError("mhd state magnetic field is not solenoidal");
}

} // namespace qnmhd
