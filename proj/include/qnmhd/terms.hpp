#pragma once

#include "qnmhd/matrices.hpp"
#include "qnmhd/params.hpp"
#include "qnmhd/states.hpp"

namespace qnmhd {

// curl B x B, curl spectral, cross product pointwise, dealiased on request.
VectorField lorentz_force(const Grid& g, const VectorField& B, bool do_dealias = true);

// curl(u x B); exactly divergence-free in spectral space.
VectorField induction_term(const Grid& g, const VectorField& u, const VectorField& B,
                           bool do_dealias = true);

// max over the grid of |u| + sqrt(p'(n)) + |B|/sqrt(n).
double char_speed_bound(const Grid& g, const PlasmaState& w, const ModelParams& params);

// Relative discrepancy between sum_i A_i(W) d_i W evaluated through the
// assembled matrices and the direct vector-calculus right-hand sides.
double quasilinear_residual(const Grid& g, const PlasmaState& w, const ModelParams& params);

} // namespace qnmhd
