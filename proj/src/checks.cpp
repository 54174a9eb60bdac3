#include "qnmhd/checks.hpp"

#include <cmath>
#include <random>

#include "qnmhd/ep_solver.hpp"
#include "qnmhd/matrices.hpp"
#include "qnmhd/spectral.hpp"
#include "qnmhd/terms.hpp"

namespace qnmhd {

namespace {

std::vector<WSample> random_band_samples(std::size_t count, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> band(0.5, 1.5);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<WSample> out(count);
    for (auto& w : out) {
        w.n = band(rng);
        for (int c = 0; c < 3; ++c) {
            w.u[c] = unit(rng);
            w.B[c] = unit(rng);
        }
    }
    return out;
}

// smooth low-mode state used by the quasilinear check
PlasmaState canned_state(const Grid& g, double amplitude) {
    PlasmaState w(g);
    for_each_point(g, [&](std::size_t p, double x, double y, double) {
        w.n[p] = 1.0 + amplitude * std::cos(x) * std::sin(y);
        w.u[0][p] = amplitude * std::sin(y);
        w.u[1][p] = amplitude * std::cos(x);
        w.u[2][p] = amplitude * std::sin(x + y);
        w.B[0][p] = amplitude * std::cos(y);
        w.B[1][p] = amplitude * std::sin(x);
        w.B[2][p] = amplitude * std::cos(x - y);
    });
    return w;
}

} // namespace

std::vector<CheckResult> run_structure_checks() {
    std::vector<CheckResult> results;
    auto add = [&](const std::string& name, double value, double tol, bool invert = false) {
        CheckResult r;
        r.name = name;
        r.value = value;
        r.tolerance = tol;
        r.pass = invert ? (value >= tol) : (value <= tol);
        results.push_back(r);
    };

    ModelParams params;
    params.gamma = 2.0;
    params.lambda = 0.1;

    // symmetrizer structure over 1000 random band states
    auto rep = check_symmetrizability(random_band_samples(1000, 20240817u), params);
    add("symmetrizer asymmetry (1000 random states)", rep.max_asymmetry, 1e-13);
    add("A0 min eigenvalue vs min(h'(n_min), n_min)",
        std::abs(rep.min_eigenvalue - rep.expected_min), 1e-12);

    const Grid g = make_grid(2, 64);

    // quasilinear-form equivalence on canned smooth states
    add("quasilinear residual (n=1, B const)",
        quasilinear_residual(g, canned_state(g, 0.0), params), 1e-12);
    add("quasilinear residual (single-mode, amp 0.1)",
        quasilinear_residual(g, canned_state(g, 0.1), params), 1e-8);

    // Poisson residual: lambda^2 lap(phi) = n - 1
    {
        ScalarField n(g, 1.0);
        for_each_point(g, [&](std::size_t p, double x, double, double) {
            n[p] = 1.0 + 0.01 * std::cos(x);
        });
        ScalarField phi = poisson_phi(g, n, params.lambda);
        ScalarField lap(g);
        for (int a = 0; a < g.dim; ++a) lap += spectral::ddx(g, spectral::ddx(g, phi, a), a);
        double num = 0.0, den = 0.0;
        for (std::size_t p = 0; p < g.size; ++p) {
            const double r = params.lambda * params.lambda * lap[p] - (n[p] - 1.0);
            num += r * r;
            den += (n[p] - 1.0) * (n[p] - 1.0);
        }
        add("poisson residual", std::sqrt(num / den), 1e-10);
    }

    // Leray projection: idempotence and gradient annihilation
    {
        VectorField v(g);
        for_each_point(g, [&](std::size_t p, double x, double y, double) {
            v[0][p] = std::sin(x) + std::cos(2.0 * y);
            v[1][p] = std::cos(x) * std::sin(y);
            v[2][p] = std::sin(y);
        });
        VectorField pv = spectral::leray_project(g, v);
        VectorField ppv = spectral::leray_project(g, pv);
        double num = 0.0, den = 0.0;
        for (int c = 0; c < 3; ++c)
            for (std::size_t p = 0; p < g.size; ++p) {
                const double d = ppv[c][p] - pv[c][p];
                num += d * d;
                den += pv[c][p] * pv[c][p];
            }
        add("leray idempotence", std::sqrt(num / den), 1e-12);

        ScalarField q(g);
        for_each_point(g, [&](std::size_t p, double x, double y, double) {
            q[p] = std::cos(x) + std::sin(2.0 * y);
        });
        VectorField gq = spectral::grad(g, q);
        VectorField pgq = spectral::leray_project(g, gq);
        double resid = 0.0;
        for (int c = 0; c < 3; ++c)
            for (std::size_t p = 0; p < g.size; ++p) resid += pgq[c][p] * pgq[c][p];
        add("leray gradient annihilation", std::sqrt(resid / g.size), 1e-12);
    }

    // norm identity: ||sin x||_{L2} on the 2-torus is pi sqrt(2)
    {
        ScalarField f(g);
        for_each_point(g, [&](std::size_t p, double x, double, double) { f[p] = std::sin(x); });
        const double expected = 4.442882938158366; // pi sqrt(2)
        add("L2 norm of sin x", std::abs(spectral::sobolev_norm(g, f, 0) - expected), 1e-10);
        add("H1 norm weight on single mode",
            std::abs(spectral::sobolev_norm(g, f, 1) - std::sqrt(2.0) * expected), 1e-10);
    }

    return results;
}

} // namespace qnmhd
