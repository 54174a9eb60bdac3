#pragma once

#include <vector>

#include "qnmhd/field.hpp"
#include "qnmhd/solve_config.hpp"
#include "qnmhd/states.hpp"

namespace qnmhd {

// Per-snapshot diagnostics record. EP runs fill all columns; MHD runs leave
// the Poisson/density entries at their defaults.
struct Diagnostics {
    double mass = 0.0;        // integral of n
    double energy = 0.0;      // total energy of the respective system
    double div_b = 0.0;       // relative spectral divergence of B
    double n_min = 0.0;
    double n_max = 0.0;
    double div_u = 0.0;       // MHD only
    double cross_helicity = 0.0; // MHD only
};

struct EpSnapshot {
    double time = 0.0;
    PlasmaState state;
    VectorField grad_phi;
    Diagnostics diag;
};

struct MhdSnapshot {
    double time = 0.0;
    MhdState state;
    Diagnostics diag;
};

struct EpTrajectory {
    std::vector<EpSnapshot> snapshots;
    RunStatus status = RunStatus::completed;
    double stop_time = 0.0; // band-violation exit time when status says so
};

struct MhdTrajectory {
    std::vector<MhdSnapshot> snapshots;
};

} // namespace qnmhd
