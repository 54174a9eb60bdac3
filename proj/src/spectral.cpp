#include "qnmhd/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <string>

#include "qnmhd/errors.hpp"

namespace qnmhd::spectral {

namespace {

// One c2c plan pair per (dim, n), created once under a lock and then executed
// on caller-owned buffers via the new-array interface (thread safe).
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

PlanPair& plans_for(const Grid& g) {
    static std::map<std::pair<int, int>, PlanPair> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(g.dim, g.n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<Complex> buf(g.size);
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    PlanPair pp;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    if (g.dim == 2) {
        pp.fwd = fftw_plan_dft_2d(g.n, g.n, p, p, FFTW_FORWARD, flags);
        pp.bwd = fftw_plan_dft_2d(g.n, g.n, p, p, FFTW_BACKWARD, flags);
    } else {
        pp.fwd = fftw_plan_dft_3d(g.n, g.n, g.n, p, p, FFTW_FORWARD, flags);
        pp.bwd = fftw_plan_dft_3d(g.n, g.n, g.n, p, p, FFTW_BACKWARD, flags);
    }
    return cache.emplace(key, pp).first->second;
}

double l2_norm(const Grid& g, const ScalarField& f) {
    double s = 0.0;
    for (double x : f.v) s += x * x;
    return std::sqrt(s / g.size * g.volume());
}

} // namespace

std::vector<Complex> forward(const Grid& g, const ScalarField& f) {
    std::vector<Complex> out(g.size);
    for (std::size_t i = 0; i < g.size; ++i) out[i] = f.v[i];
    fftw_execute_dft(plans_for(g).fwd, reinterpret_cast<fftw_complex*>(out.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    const double inv = 1.0 / static_cast<double>(g.size);
    for (auto& c : out) c *= inv;
    return out;
}

ScalarField inverse(const Grid& g, const std::vector<Complex>& fhat) {
    std::vector<Complex> buf = fhat;
    fftw_execute_dft(plans_for(g).bwd, reinterpret_cast<fftw_complex*>(buf.data()),
                     reinterpret_cast<fftw_complex*>(buf.data()));
    ScalarField out;
    out.v.resize(g.size);
    for (std::size_t i = 0; i < g.size; ++i) out.v[i] = buf[i].real();
    return out;
}

double mean(const Grid& g, const ScalarField& f) {
    double s = 0.0;
    for (double x : f.v) s += x;
    return s / static_cast<double>(g.size);
}

double integral(const Grid& g, const ScalarField& f) {
    return mean(g, f) * g.volume();
}

ScalarField ddx(const Grid& g, const ScalarField& f, int axis) {
    if (axis < 0 || axis >= g.dim)
        throw ConfigError("ddx axis " + std::to_string(axis) + " out of range for dim " +
                          std::to_string(g.dim));
    auto fh = forward(g, f);
    const int nyq = -g.n / 2;
    for_each_mode(g, [&](std::size_t idx, double k0, double k1, double k2) {
        const double k = axis == 0 ? k0 : axis == 1 ? k1 : k2;
        // drop the Nyquist mode: ik has no real-valued counterpart there
        const double kk = (k == nyq) ? 0.0 : k;
        fh[idx] *= Complex(0.0, kk);
    });
    return inverse(g, fh);
}

VectorField grad(const Grid& g, const ScalarField& f) {
    VectorField out;
    for (int a = 0; a < 3; ++a)
        out[a] = (a < g.dim) ? ddx(g, f, a) : ScalarField(g);
    return out;
}

ScalarField divergence(const Grid& g, const VectorField& v) {
    ScalarField out = ddx(g, v[0], 0);
    out += ddx(g, v[1], 1);
    if (g.dim == 3) out += ddx(g, v[2], 2);
    return out;
}

VectorField curl(const Grid& g, const VectorField& v) {
    const ScalarField zero(g);
    ScalarField dy_v2 = ddx(g, v[2], 1);
    ScalarField dx_v2 = ddx(g, v[2], 0);
    ScalarField dx_v1 = ddx(g, v[1], 0);
    ScalarField dy_v0 = ddx(g, v[0], 1);
    ScalarField dz_v0 = g.dim == 3 ? ddx(g, v[0], 2) : zero;
    ScalarField dz_v1 = g.dim == 3 ? ddx(g, v[1], 2) : zero;

    VectorField out;
    out[0] = dy_v2 - dz_v1;
    out[1] = dz_v0 - dx_v2;
    out[2] = dx_v1 - dy_v0;
    return out;
}

VectorField grad_inv_laplacian(const Grid& g, const ScalarField& f) {
    const double m = mean(g, f);
    const double nrm = l2_norm(g, f);
    if (std::abs(m) > 1e-10 * nrm && nrm > 0.0)
        throw SolvabilityError("grad_inv_laplacian: input is not mean-zero (mean=" +
                               std::to_string(m) + ")");
    auto fh = forward(g, f);
    std::vector<Complex> comp[3];
    for (int a = 0; a < 3; ++a) comp[a].assign(g.size, Complex(0.0, 0.0));
    for_each_mode(g, [&](std::size_t idx, double k0, double k1, double k2) {
        const double k2sum = k0 * k0 + k1 * k1 + k2 * k2;
        if (k2sum == 0.0) return;
        const Complex phi = -fh[idx] / k2sum; // phi_k = -fhat_k / |k|^2
        comp[0][idx] = Complex(0.0, k0) * phi;
        comp[1][idx] = Complex(0.0, k1) * phi;
        comp[2][idx] = Complex(0.0, k2) * phi;
    });
    VectorField out;
    for (int a = 0; a < 3; ++a) out[a] = inverse(g, comp[a]);
    return out;
}

VectorField leray_project(const Grid& g, const VectorField& v) {
    // done directly in Fourier space (vhat - k (k.vhat)/|k|^2) so that an
    // already-solenoidal v with roundoff-level divergence does not trip the
    // mean-zero guard of grad_inv_laplacian
    std::vector<Complex> vh[3];
    for (int a = 0; a < 3; ++a) vh[a] = forward(g, v[a]);
    const int nyq = -g.n / 2;
    for_each_mode(g, [&](std::size_t idx, double k0, double k1, double k2) {
        double k[3] = {k0, k1, k2};
        for (int a = 0; a < 3; ++a)
            if (k[a] == nyq) k[a] = 0.0;
        const double ksq = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        if (ksq == 0.0) return;
        const Complex kd = (k[0] * vh[0][idx] + k[1] * vh[1][idx] + k[2] * vh[2][idx]) / ksq;
        for (int a = 0; a < 3; ++a) vh[a][idx] -= k[a] * kd;
    });
    VectorField out;
    for (int a = 0; a < 3; ++a) out[a] = inverse(g, vh[a]);
    return out;
}

double sobolev_norm(const Grid& g, const ScalarField& f, int s) {
    if (s < 0 || s > 6)
        throw ConfigError("sobolev_norm order must be in [0,6], got " + std::to_string(s));
    auto fh = forward(g, f);
    double acc = 0.0;
    for_each_mode(g, [&](std::size_t idx, double k0, double k1, double k2) {
        const double w = std::pow(1.0 + k0 * k0 + k1 * k1 + k2 * k2, s);
        acc += w * std::norm(fh[idx]);
    });
    return std::sqrt(acc * g.volume());
}

double sobolev_norm(const Grid& g, const VectorField& f, int s) {
    double acc = 0.0;
    for (int a = 0; a < 3; ++a) {
        const double c = sobolev_norm(g, f[a], s);
        acc += c * c;
    }
    return std::sqrt(acc);
}

ScalarField dealias(const Grid& g, const ScalarField& f) {
    auto fh = forward(g, f);
    std::size_t idx = 0;
    if (g.dim == 2) {
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j, ++idx)
                if (!(g.keep[i] && g.keep[j])) fh[idx] = 0.0;
    } else {
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                for (int k = 0; k < g.n; ++k, ++idx)
                    if (!(g.keep[i] && g.keep[j] && g.keep[k])) fh[idx] = 0.0;
    }
    return inverse(g, fh);
}

VectorField dealias(const Grid& g, const VectorField& v) {
    VectorField out;
    for (int a = 0; a < 3; ++a) out[a] = dealias(g, v[a]);
    return out;
}

double relative_div(const Grid& g, const VectorField& v) {
    double vn = 0.0;
    for (int a = 0; a < 3; ++a) {
        const double c = l2_norm(g, v[a]);
        vn += c * c;
    }
    vn = std::sqrt(vn);
    if (vn == 0.0) return 0.0;
    return l2_norm(g, divergence(g, v)) / vn;
}

} // namespace qnmhd::spectral
