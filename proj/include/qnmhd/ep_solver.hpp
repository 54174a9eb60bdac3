#pragma once

#include "qnmhd/params.hpp"
#include "qnmhd/solve_config.hpp"
#include "qnmhd/trajectory.hpp"

namespace qnmhd {

// grad phi with lambda^2 Laplacian(phi) = n - 1; requires mean(n) = 1.
VectorField poisson_grad_phi(const Grid& g, const ScalarField& n, double lambda);

// Mean-zero potential phi itself (used by the modulated-energy diagnostics).
ScalarField poisson_phi(const Grid& g, const ScalarField& n, double lambda);

// Tendency of the compressible system in nonconservative velocity form:
//   dn/dt = -div(n u)
//   du/dt = -(u.grad)u - grad h(n) + grad phi + (1/n) curl B x B
//   dB/dt = curl(u x B)
PlasmaState ep_rhs(const Grid& g, const PlasmaState& w, const ModelParams& params);

inline bool finite(double x) { return std::isfinite(x); }

// Classical four-stage Runge-Kutta; works for any state type with +, *.
// Throws BlowUpError (tagged with `time`) when a stage goes nonfinite.
template <class S, class F>
S step_rk4(const S& y, double dt, F&& rhs, double time = 0.0) {
    if (!(dt > 0.0)) throw ConfigError("step_rk4: dt must be positive");
    S k1 = rhs(y);
    S k2 = rhs(y + (0.5 * dt) * k1);
    S k3 = rhs(y + (0.5 * dt) * k2);
    S k4 = rhs(y + dt * k3);
    S out = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!finite(out)) throw BlowUpError(time, "step_rk4: nonfinite state");
    return out;
}

// dt = min(cfl * dx / char_speed_bound, dt_lambda_factor * lambda).
double stable_dt(const Grid& g, const PlasmaState& w, const ModelParams& params,
                 const SolveConfig& config);

// integral of n|u|^2/2 + n^gamma/(gamma(gamma-1)) + |B|^2/2 + (lambda^2/2)|grad phi|^2.
double total_energy_ep(const Grid& g, const PlasmaState& w, const VectorField& grad_phi,
                       const ModelParams& params);

// Integrates up to t_end with snapshots on the shared schedule; stops early
// with status band_violation when n leaves the monitor band.
EpTrajectory run_ep(const Grid& g, const PlasmaState& initial, const ModelParams& params,
                    const SolveConfig& config);

} // namespace qnmhd
