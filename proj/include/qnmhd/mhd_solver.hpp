#pragma once

#include "qnmhd/params.hpp"
#include "qnmhd/solve_config.hpp"
#include "qnmhd/trajectory.hpp"

namespace qnmhd {

// Ideal incompressible tendency:
//   du/dt = P[ -(u.grad)u + curl B x B ],  dB/dt = curl(u x B),
// P the Leray projection; the pressure slot of the returned state is unused.
MhdState mhd_rhs(const Grid& g, const MhdState& s, bool do_dealias = true);

// Mean-zero p with Laplacian(p) = div(curl B x B - (u.grad)u).
ScalarField pressure_recover(const Grid& g, const VectorField& u, const VectorField& B,
                             bool do_dealias = true);

double kinetic_magnetic_energy(const Grid& g, const MhdState& s);
double cross_helicity(const Grid& g, const MhdState& s);

// Advective + Alfven CFL; no lambda cap (the system is lambda-free).
double stable_dt_mhd(const Grid& g, const MhdState& s, const SolveConfig& config);

// Snapshots on the same schedule as run_ep so error norms need no temporal
// interpolation; per-snapshot pressure is recovered diagnostically.
MhdTrajectory run_mhd(const Grid& g, const MhdState& initial, const SolveConfig& config,
                      bool do_dealias = true);

} // namespace qnmhd
