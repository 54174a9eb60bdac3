#include "qnmhd/terms.hpp"

#include <algorithm>
#include <cmath>

#include "qnmhd/eos.hpp"
#include "qnmhd/spectral.hpp"

namespace qnmhd {

using spectral::curl;
using spectral::ddx;
using spectral::dealias;
using spectral::divergence;
using spectral::grad;

VectorField lorentz_force(const Grid& g, const VectorField& B, bool do_dealias) {
    VectorField f = cross(curl(g, B), B);
    return do_dealias ? dealias(g, f) : f;
}

VectorField induction_term(const Grid& g, const VectorField& u, const VectorField& B,
                           bool do_dealias) {
    VectorField uxb = cross(u, B);
    if (do_dealias) uxb = dealias(g, uxb);
    return curl(g, uxb);
}

double char_speed_bound(const Grid& g, const PlasmaState& w, const ModelParams& params) {
    double vmax = 0.0;
    for (std::size_t p = 0; p < g.size; ++p) {
        const double n = w.n[p];
        require_positive_density(n, "char_speed_bound");
        const double umag = std::sqrt(w.u[0][p] * w.u[0][p] + w.u[1][p] * w.u[1][p] +
                                      w.u[2][p] * w.u[2][p]);
        const double bmag = std::sqrt(w.B[0][p] * w.B[0][p] + w.B[1][p] * w.B[1][p] +
                                      w.B[2][p] * w.B[2][p]);
        vmax = std::max(vmax, umag + std::sqrt(pressure_prime(n, params.gamma)) +
                                  bmag / std::sqrt(n));
    }
    return vmax;
}

double quasilinear_residual(const Grid& g, const PlasmaState& w, const ModelParams& params) {
    // Route 1: pointwise assembled matrices applied to spectral derivatives.
    std::array<ScalarField, 7> dW[3]; // dW[axis][component]
    for (int a = 0; a < g.dim; ++a) {
        dW[a][0] = ddx(g, w.n, a);
        for (int c = 0; c < 3; ++c) {
            dW[a][1 + c] = ddx(g, w.u[c], a);
            dW[a][4 + c] = ddx(g, w.B[c], a);
        }
    }
    std::array<ScalarField, 7> matrix_side;
    for (int c = 0; c < 7; ++c) matrix_side[c] = ScalarField(g, 0.0);
    for (std::size_t p = 0; p < g.size; ++p) {
        WSample s;
        s.n = w.n[p];
        for (int c = 0; c < 3; ++c) {
            s.u[c] = w.u[c][p];
            s.B[c] = w.B[c][p];
        }
        for (int a = 0; a < g.dim; ++a) {
            const Mat7 Ai = assemble_Ai(s, a + 1, params);
            for (int r = 0; r < 7; ++r) {
                double acc = 0.0;
                for (int c = 0; c < 7; ++c) acc += Ai[r][c] * dW[a][c][p];
                matrix_side[r][p] += acc;
            }
        }
    }

    // Route 2: the nonconservative physical-space forms.
    std::array<ScalarField, 7> direct_side;
    // continuity: u . grad n + n div u
    ScalarField div_u = divergence(g, w.u);
    direct_side[0] = pointwise_mul(w.n, div_u);
    for (int a = 0; a < g.dim; ++a)
        direct_side[0] += pointwise_mul(w.u[a], dW[a][0]);
    // velocity: (u.grad)u + grad h(n) - (1/n) curl B x B
    ScalarField h(g);
    for (std::size_t p = 0; p < g.size; ++p) h[p] = enthalpy(w.n[p], params.gamma);
    VectorField grad_h = grad(g, h);
    VectorField lorentz = lorentz_force(g, w.B, false);
    for (int c = 0; c < 3; ++c) {
        direct_side[1 + c] = grad_h[c];
        for (int a = 0; a < g.dim; ++a)
            direct_side[1 + c] += pointwise_mul(w.u[a], dW[a][1 + c]);
        for (std::size_t p = 0; p < g.size; ++p)
            direct_side[1 + c][p] -= lorentz[c][p] / w.n[p];
    }
    // induction: -curl(u x B), curl taken spectrally on the pointwise product
    VectorField minus_ind = -1.0 * induction_term(g, w.u, w.B, false);
    for (int c = 0; c < 3; ++c) direct_side[4 + c] = minus_ind[c];

    double diff2 = 0.0, ref2 = 0.0;
    for (int c = 0; c < 7; ++c)
        for (std::size_t p = 0; p < g.size; ++p) {
            const double d = matrix_side[c][p] - direct_side[c][p];
            diff2 += d * d;
            ref2 += matrix_side[c][p] * matrix_side[c][p];
        }
    if (ref2 == 0.0) return std::sqrt(diff2);
    return std::sqrt(diff2 / ref2);
}

} // namespace qnmhd
