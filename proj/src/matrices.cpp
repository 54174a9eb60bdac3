#include "qnmhd/matrices.hpp"

#include <algorithm>
#include <cmath>

#include "qnmhd/eos.hpp"

namespace qnmhd {

Mat3 assemble_G(const Vec3& B, int i) {
    // G_i has zeros in row i; row r (r != i) is B_r e_i^T - B_i e_r^T.
    Mat3 g{};
    const int ii = i - 1;
    for (int r = 0; r < 3; ++r) {
        if (r == ii) continue;
        g[r][ii] += B[r];
        g[r][r] -= B[ii];
    }
    return g;
}

Mat7 assemble_A0(double n, const ModelParams& params) {
    require_positive_density(n, "assemble_A0");
    Mat7 a{};
    a[0][0] = enthalpy_prime(n, params.gamma);
    for (int r = 1; r < 4; ++r) a[r][r] = n;
    for (int r = 4; r < 7; ++r) a[r][r] = 1.0;
    return a;
}

Mat7 assemble_Ai(const WSample& w, int i, const ModelParams& params) {
    require_positive_density(w.n, "assemble_Ai");
    const int ii = i - 1;
    const double ui = w.u[ii];
    const double hp = enthalpy_prime(w.n, params.gamma);
    const Mat3 G = assemble_G(w.B, i);

    Mat7 a{};
    a[0][0] = ui;
    for (int c = 0; c < 3; ++c) a[0][1 + c] = (c == ii) ? w.n : 0.0;
    for (int r = 0; r < 3; ++r) {
        a[1 + r][0] = (r == ii) ? hp : 0.0;
        a[1 + r][1 + r] = ui;
        for (int c = 0; c < 3; ++c) a[1 + r][4 + c] = G[c][r] / w.n; // G^T / n
        a[4 + r][4 + r] = ui;
        for (int c = 0; c < 3; ++c) a[4 + r][1 + c] = G[r][c];
    }
    return a;
}

SymmetrizabilityReport check_symmetrizability(const std::vector<WSample>& samples,
                                              const ModelParams& params) {
    SymmetrizabilityReport rep;
    rep.min_eigenvalue = 1e300;
    rep.n_min = 1e300;
    for (const auto& w : samples) {
        const Mat7 a0 = assemble_A0(w.n, params);
        rep.n_min = std::min(rep.n_min, w.n);
        for (int d = 0; d < 7; ++d) rep.min_eigenvalue = std::min(rep.min_eigenvalue, a0[d][d]);
        for (int i = 1; i <= 3; ++i) {
            const Mat7 ai = assemble_Ai(w, i, params);
            // hat A_i = A0 * A_i (A0 diagonal)
            double asym2 = 0.0;
            for (int r = 0; r < 7; ++r)
                for (int c = r + 1; c < 7; ++c) {
                    const double d = a0[r][r] * ai[r][c] - a0[c][c] * ai[c][r];
                    asym2 += 2.0 * d * d;
                }
            rep.max_asymmetry = std::max(rep.max_asymmetry, std::sqrt(asym2));
        }
    }
    rep.expected_min = std::min(enthalpy_prime(rep.n_min, params.gamma), rep.n_min);
    rep.pass = rep.max_asymmetry <= 1e-13 && rep.min_eigenvalue >= rep.expected_min - 1e-12;
    return rep;
}

} // namespace qnmhd
