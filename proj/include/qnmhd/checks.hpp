#pragma once

#include <string>
#include <vector>

namespace qnmhd {

struct CheckResult {
    std::string name;
    bool pass = false;
    double value = 0.0;     // measured residual / metric
    double tolerance = 0.0;
};

// Structure battery behind the `check` subcommand: symmetrizer symmetry and
// positivity over random states in the density band, quasilinear-form
// equivalence on canned states, and the Poisson / Leray / norm identities.
std::vector<CheckResult> run_structure_checks();

} // namespace qnmhd
