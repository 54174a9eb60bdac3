#pragma once

#include <array>
#include <vector>

#include "qnmhd/params.hpp"

namespace qnmhd {

using Mat3 = std::array<std::array<double, 3>, 3>;
using Mat7 = std::array<std::array<double, 7>, 7>;
using Vec3 = std::array<double, 3>;

// Pointwise sample of the 7-vector unknown, ordering (n, u1,u2,u3, B1,B2,B3).
struct WSample {
    double n = 1.0;
    Vec3 u{0.0, 0.0, 0.0};
    Vec3 B{0.0, 0.0, 0.0};
};

// The magnetic coupling matrices G_i, i in {1,2,3} (1-based to match the
// coordinate directions); G_i v = B v_i - v B_i componentwise in the
// off-row entries, e.g. G_1 rows (0,0,0), (B2,-B1,0), (B3,0,-B1).
Mat3 assemble_G(const Vec3& B, int i);

// Symmetrizer diag(h'(n), n I3, I3). The unit magnetic block (rather than
// n I3) is what makes A0*Ai exactly symmetric with the induction rows of Ai
// carrying G_i unweighted; sum_i G_i d_i u = B div u - (B.grad)u and
// sum_i G_i^T d_i B = -curl B x B hold as identities.
Mat7 assemble_A0(double n, const ModelParams& params);

// Coefficient matrix of the quasilinear form d_t W + sum_i A_i dW/dx_i = S:
//   row n:  (u_i, n e_i^T, 0)
//   row u:  (h'(n) e_i, u_i I3, G_i^T / n)
//   row B:  (0, G_i, u_i I3)
Mat7 assemble_Ai(const WSample& w, int i, const ModelParams& params);

struct SymmetrizabilityReport {
    double max_asymmetry = 0.0;      // max_i ||A0 Ai - (A0 Ai)^T||_F over samples
    double min_eigenvalue = 0.0;     // min eigenvalue of A0 over samples
    double expected_min = 0.0;       // min(h'(n_min), n_min)
    double n_min = 0.0;
    bool pass = false;
};

// Evaluates symmetry of A0*Ai and positivity of A0 over a sample set.
SymmetrizabilityReport check_symmetrizability(const std::vector<WSample>& samples,
                                              const ModelParams& params);

} // namespace qnmhd
