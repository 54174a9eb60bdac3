#pragma once

#include <string>

#include "qnmhd/errors.hpp"

namespace qnmhd {

struct SolveConfig {
    double t_end = 0.5;
    double cfl = 0.4;                 // in (0,1]
    double dt_lambda_factor = 0.5;    // cap dt <= factor * lambda (EP only)
    int snapshot_stride = 25;         // snapshots at j*t_end/stride, j=0..stride
    double band_lo = 0.5;             // density monitor band of the maximal
    double band_hi = 1.5;             //   existence definition
    double fixed_dt = 0.0;            // > 0 forces a constant step (order checks)

    void validate() const {
        if (!(t_end > 0.0)) throw ConfigError("t_end must be positive");
        if (!(cfl > 0.0) || cfl > 1.0) throw ConfigError("cfl must be in (0,1]");
        if (!(dt_lambda_factor > 0.0)) throw ConfigError("dt_lambda_factor must be positive");
        if (snapshot_stride < 1) throw ConfigError("snapshot_stride must be >= 1");
        if (!(band_lo < band_hi)) throw ConfigError("density band is empty");
    }
};

enum class RunStatus { completed, band_violation };

inline const char* to_string(RunStatus s) {
    return s == RunStatus::completed ? "completed" : "band_violation";
}

} // namespace qnmhd
