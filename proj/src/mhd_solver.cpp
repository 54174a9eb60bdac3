#include "qnmhd/mhd_solver.hpp"

#include <algorithm>
#include <cmath>

#include "qnmhd/ep_solver.hpp"
#include "qnmhd/spectral.hpp"
#include "qnmhd/terms.hpp"

namespace qnmhd {

using spectral::ddx;
using spectral::dealias;
using spectral::divergence;
using spectral::leray_project;

namespace {

VectorField advection(const Grid& g, const VectorField& u, bool do_dealias) {
    VectorField adv(g);
    for (int c = 0; c < 3; ++c)
        for (int a = 0; a < g.dim; ++a)
            adv[c] += pointwise_mul(u[a], ddx(g, u[c], a));
    return do_dealias ? dealias(g, adv) : adv;
}

} // namespace

MhdState mhd_rhs(const Grid& g, const MhdState& s, bool do_dealias) {
    MhdState t;
    VectorField f = lorentz_force(g, s.B, do_dealias) - advection(g, s.u, do_dealias);
    t.u = leray_project(g, f);
    t.B = induction_term(g, s.u, s.B, do_dealias);
    t.p = ScalarField(g); // pressure is recovered diagnostically, not evolved
    return t;
}

ScalarField pressure_recover(const Grid& g, const VectorField& u, const VectorField& B,
                             bool do_dealias) {
    VectorField f = lorentz_force(g, B, do_dealias) - advection(g, u, do_dealias);
    ScalarField rhs = divergence(g, f);
    auto fh = spectral::forward(g, rhs);
    for_each_mode(g, [&](std::size_t idx, double k0, double k1, double k2) {
        const double k2sum = k0 * k0 + k1 * k1 + k2 * k2;
        fh[idx] = (k2sum == 0.0) ? 0.0 : -fh[idx] / k2sum;
    });
    return spectral::inverse(g, fh);
}

double kinetic_magnetic_energy(const Grid& g, const MhdState& s) {
    double acc = 0.0;
    for (std::size_t p = 0; p < g.size; ++p) {
        const double u2 = s.u[0][p] * s.u[0][p] + s.u[1][p] * s.u[1][p] + s.u[2][p] * s.u[2][p];
        const double b2 = s.B[0][p] * s.B[0][p] + s.B[1][p] * s.B[1][p] + s.B[2][p] * s.B[2][p];
        acc += 0.5 * (u2 + b2);
    }
    return acc / g.size * g.volume();
}

double cross_helicity(const Grid& g, const MhdState& s) {
    double acc = 0.0;
    for (std::size_t p = 0; p < g.size; ++p)
        acc += s.u[0][p] * s.B[0][p] + s.u[1][p] * s.B[1][p] + s.u[2][p] * s.B[2][p];
    return acc / g.size * g.volume();
}

double stable_dt_mhd(const Grid& g, const MhdState& s, const SolveConfig& config) {
    double vmax = 0.0;
    for (std::size_t p = 0; p < g.size; ++p) {
        const double um = std::sqrt(s.u[0][p] * s.u[0][p] + s.u[1][p] * s.u[1][p] +
                                    s.u[2][p] * s.u[2][p]);
        const double bm = std::sqrt(s.B[0][p] * s.B[0][p] + s.B[1][p] * s.B[1][p] +
                                    s.B[2][p] * s.B[2][p]);
        vmax = std::max(vmax, um + bm);
    }
    return config.cfl * g.dx() / std::max(vmax, 1e-14);
}

MhdTrajectory run_mhd(const Grid& g, const MhdState& initial, const SolveConfig& config,
                      bool do_dealias) {
    config.validate();
    validate_mhd_state(g, initial);

    MhdTrajectory traj;
    MhdState s = initial;
    double t = 0.0;
    auto rhs = [&](const MhdState& y) { return mhd_rhs(g, y, do_dealias); };

    auto record = [&](double time) {
        MhdSnapshot snap;
        snap.time = time;
        snap.state = s;
        snap.state.p = pressure_recover(g, s.u, s.B, do_dealias);
        snap.diag.energy = kinetic_magnetic_energy(g, s);
        snap.diag.cross_helicity = cross_helicity(g, s);
        snap.diag.div_u = spectral::relative_div(g, s.u);
        snap.diag.div_b = spectral::relative_div(g, s.B);
        traj.snapshots.push_back(std::move(snap));
    };
    record(0.0);

    const double dt_snap = config.t_end / config.snapshot_stride;
    for (int j = 1; j <= config.snapshot_stride; ++j) {
        const double t_target = (j == config.snapshot_stride) ? config.t_end : j * dt_snap;
        while (t < t_target - 1e-12) {
            double dt = config.fixed_dt > 0.0 ? config.fixed_dt : stable_dt_mhd(g, s, config);
            dt = std::min(dt, t_target - t);
            s = step_rk4(s, dt, rhs, t);
            t += dt;
        }
        t = t_target;
        record(t);
    }
    return traj;
}

} // namespace qnmhd
