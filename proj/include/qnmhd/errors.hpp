#pragma once

#include <stdexcept>
#include <string>

namespace qnmhd {

// Stable exit-code enumeration used by the CLI. Documented in README.
enum class ExitCode : int {
    ok = 0,
    failure = 1,
    config_error = 2,
    solvability_error = 3,
    band_violation = 4,
    blow_up = 5,
    rate_fail = 6,
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Poisson solvability: mean-zero right-hand side required on the torus.
struct SolvabilityError : std::runtime_error {
    explicit SolvabilityError(const std::string& msg) : std::runtime_error(msg) {}
};

struct VacuumError : std::runtime_error {
    explicit VacuumError(const std::string& msg) : std::runtime_error(msg) {}
};

struct BlowUpError : std::runtime_error {
    double time;
    explicit BlowUpError(double t, const std::string& msg)
        : std::runtime_error(msg), time(t) {}
};

} // namespace qnmhd
