#pragma once

#include "qnmhd/errors.hpp"

#include <string>

namespace qnmhd {

// Physical and numerical parameters shared by solvers and diagnostics.
struct ModelParams {
    double lambda = 0.1;  // scaled Debye length, in (0,1]
    double gamma = 2.0;   // adiabatic exponent, > 1
    int sobolev_index = 2;
    bool dealias = true;

    void validate() const {
        if (!(lambda > 0.0) || lambda > 1.0)
            throw ConfigError("lambda must be in (0,1], got " + std::to_string(lambda));
        if (!(gamma > 1.0))
            throw ConfigError("gamma must be > 1, got " + std::to_string(gamma));
        if (sobolev_index < 0 || sobolev_index > 6)
            throw ConfigError("sobolev index must be in [0,6]");
    }
};

} // namespace qnmhd
