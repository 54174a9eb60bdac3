#include "qnmhd/ep_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qnmhd/eos.hpp"
#include "qnmhd/spectral.hpp"
#include "qnmhd/terms.hpp"

namespace qnmhd {

using spectral::ddx;
using spectral::dealias;
using spectral::divergence;
using spectral::grad;

namespace {

ScalarField density_minus_one(const Grid& g, const ScalarField& n, double lambda) {
    if (!(lambda > 0.0))
        throw ConfigError("poisson: lambda must be positive, got " + std::to_string(lambda));
    ScalarField rhs = n;
    for (double& x : rhs.v) x -= 1.0;
    const double m = spectral::mean(g, n);
    if (std::abs(m - 1.0) > 1e-10)
        throw SolvabilityError("poisson: mean density is " + std::to_string(m) +
                               ", right-hand side not mean-zero");
    return rhs;
}

} // namespace

VectorField poisson_grad_phi(const Grid& g, const ScalarField& n, double lambda) {
    // direct spectral inversion; the solvability guard is the absolute check on
    // mean(n) above (the relative guard in grad_inv_laplacian is meaningless
    // when n-1 sits at rounding level, as it does for exact data)
    ScalarField rhs = density_minus_one(g, n, lambda);
    auto fh = spectral::forward(g, rhs);
    const double inv_l2 = 1.0 / (lambda * lambda);
    std::vector<spectral::Complex> comp[3];
    for (int a = 0; a < 3; ++a) comp[a].assign(g.size, 0.0);
    for_each_mode(g, [&](std::size_t idx, double k0, double k1, double k2) {
        const double k2sum = k0 * k0 + k1 * k1 + k2 * k2;
        if (k2sum == 0.0) return;
        const spectral::Complex phi = -fh[idx] * inv_l2 / k2sum;
        comp[0][idx] = spectral::Complex(0.0, k0) * phi;
        comp[1][idx] = spectral::Complex(0.0, k1) * phi;
        comp[2][idx] = spectral::Complex(0.0, k2) * phi;
    });
    VectorField out;
    for (int a = 0; a < 3; ++a) out[a] = spectral::inverse(g, comp[a]);
    return out;
}

ScalarField poisson_phi(const Grid& g, const ScalarField& n, double lambda) {
    ScalarField rhs = density_minus_one(g, n, lambda);
    auto fh = spectral::forward(g, rhs);
    const double inv_l2 = 1.0 / (lambda * lambda);
    for_each_mode(g, [&](std::size_t idx, double k0, double k1, double k2) {
        const double k2sum = k0 * k0 + k1 * k1 + k2 * k2;
        fh[idx] = (k2sum == 0.0) ? 0.0 : -fh[idx] * inv_l2 / k2sum;
    });
    return spectral::inverse(g, fh);
}

PlasmaState ep_rhs(const Grid& g, const PlasmaState& w, const ModelParams& params) {
    PlasmaState t;

    // continuity, conservative form: the k=0 mode of div is exactly zero,
    // so mass is conserved at the semi-discrete level
    VectorField nu(g);
    for (int c = 0; c < 3; ++c) nu[c] = pointwise_mul(w.n, w.u[c]);
    if (params.dealias) nu = dealias(g, nu);
    t.n = -1.0 * divergence(g, nu);

    // velocity, nonconservative form
    ScalarField h(g);
    for (std::size_t p = 0; p < g.size; ++p) h[p] = enthalpy(w.n[p], params.gamma);
    VectorField grad_h = grad(g, h);
    VectorField grad_phi = poisson_grad_phi(g, w.n, params.lambda);
    VectorField lorentz = lorentz_force(g, w.B, params.dealias);

    t.u = VectorField(g);
    for (int c = 0; c < 3; ++c) {
        ScalarField adv(g);
        for (int a = 0; a < g.dim; ++a)
            adv += pointwise_mul(w.u[a], ddx(g, w.u[c], a));
        if (params.dealias) adv = dealias(g, adv);
        for (std::size_t p = 0; p < g.size; ++p)
            t.u[c][p] = -adv[p] - grad_h[c][p] + grad_phi[c][p] + lorentz[c][p] / w.n[p];
        if (params.dealias) t.u[c] = dealias(g, t.u[c]);
    }

    t.B = induction_term(g, w.u, w.B, params.dealias);
    return t;
}

double stable_dt(const Grid& g, const PlasmaState& w, const ModelParams& params,
                 const SolveConfig& config) {
    const double speed = char_speed_bound(g, w, params);
    double dt = config.cfl * g.dx() / std::max(speed, 1e-14);
    dt = std::min(dt, config.dt_lambda_factor * params.lambda);
    return dt;
}

double total_energy_ep(const Grid& g, const PlasmaState& w, const VectorField& grad_phi,
                       const ModelParams& params) {
    const double gm = params.gamma;
    double acc = 0.0;
    for (std::size_t p = 0; p < g.size; ++p) {
        const double n = w.n[p];
        const double u2 = w.u[0][p] * w.u[0][p] + w.u[1][p] * w.u[1][p] + w.u[2][p] * w.u[2][p];
        const double b2 = w.B[0][p] * w.B[0][p] + w.B[1][p] * w.B[1][p] + w.B[2][p] * w.B[2][p];
        const double gp2 = grad_phi[0][p] * grad_phi[0][p] + grad_phi[1][p] * grad_phi[1][p] +
                           grad_phi[2][p] * grad_phi[2][p];
        acc += 0.5 * n * u2 + std::pow(n, gm) / (gm * (gm - 1.0)) + 0.5 * b2 +
               0.5 * params.lambda * params.lambda * gp2;
    }
    return acc / g.size * g.volume();
}

namespace {

Diagnostics ep_diagnostics(const Grid& g, const PlasmaState& w, const VectorField& grad_phi,
                           const ModelParams& params) {
    Diagnostics d;
    d.mass = spectral::integral(g, w.n);
    d.energy = total_energy_ep(g, w, grad_phi, params);
    d.div_b = spectral::relative_div(g, w.B);
    d.n_min = *std::min_element(w.n.v.begin(), w.n.v.end());
    d.n_max = *std::max_element(w.n.v.begin(), w.n.v.end());
    return d;
}

} // namespace

EpTrajectory run_ep(const Grid& g, const PlasmaState& initial, const ModelParams& params,
                    const SolveConfig& config) {
    params.validate();
    config.validate();
    validate_plasma_state(g, initial);

    EpTrajectory traj;
    PlasmaState w = initial;
    double t = 0.0;
    auto rhs = [&](const PlasmaState& s) { return ep_rhs(g, s, params); };

    auto record = [&](double time) {
        EpSnapshot snap;
        snap.time = time;
        snap.state = w;
        snap.grad_phi = poisson_grad_phi(g, w.n, params.lambda);
        snap.diag = ep_diagnostics(g, w, snap.grad_phi, params);
        traj.snapshots.push_back(std::move(snap));
    };
    record(0.0);

    const double dt_snap = config.t_end / config.snapshot_stride;
    for (int j = 1; j <= config.snapshot_stride; ++j) {
        const double t_target = (j == config.snapshot_stride) ? config.t_end : j * dt_snap;
        while (t < t_target - 1e-12) {
            double dt = config.fixed_dt > 0.0 ? config.fixed_dt
                                              : stable_dt(g, w, params, config);
            dt = std::min(dt, t_target - t);
            w = step_rk4(w, dt, rhs, t);
            t += dt;
            const double nmin = *std::min_element(w.n.v.begin(), w.n.v.end());
            const double nmax = *std::max_element(w.n.v.begin(), w.n.v.end());
            if (nmin < config.band_lo || nmax > config.band_hi) {
                traj.status = RunStatus::band_violation;
                traj.stop_time = t;
                record(t);
                return traj;
            }
        }
        t = t_target;
        record(t);
    }
    traj.stop_time = t;
    return traj;
}

} // namespace qnmhd
