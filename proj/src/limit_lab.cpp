#include "qnmhd/limit_lab.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <cmath>
#include <string>
#include <thread>

#include "qnmhd/eos.hpp"
#include "qnmhd/spectral.hpp"

namespace qnmhd {

using spectral::sobolev_norm;

PlasmaState well_prepared_init(const Grid& g, const VectorField& u0, const VectorField& B0,
                               double lambda, InitMode mode) {
    if (spectral::relative_div(g, u0) > 1e-10)
        throw SolvabilityError("well_prepared_init: u0 is not divergence-free");
    if (spectral::relative_div(g, B0) > 1e-10)
        throw SolvabilityError("well_prepared_init: B0 is not divergence-free");

    PlasmaState w(g);
    w.u = u0;
    w.B = B0;
    if (mode == InitMode::exact) return w;

    // fixed smooth perturbations, normalized to unit H^2 norm; the vector
    // ones depend on (x,y) only and are divergence-free componentwise
    ScalarField dn(g);
    VectorField du(g), db(g);
    for_each_point(g, [&](std::size_t p, double x, double y, double) {
        dn[p] = std::cos(x) + std::sin(y);
        du[0][p] = std::sin(y);
        du[1][p] = std::cos(x);
        du[2][p] = std::sin(x + y);
        db[0][p] = std::cos(y);
        db[1][p] = std::sin(x);
        db[2][p] = std::cos(x - y);
    });
    dn *= 1.0 / sobolev_norm(g, dn, 2);
    du *= 1.0 / sobolev_norm(g, du, 2);
    db *= 1.0 / sobolev_norm(g, db, 2);

    w.n += (lambda * lambda) * dn;
    w.u += lambda * du;
    w.B += lambda * db;
    return w;
}

std::pair<VectorField, VectorField> default_initial_fields(const Grid& g) {
    VectorField u0(g), b0(g);
    for_each_point(g, [&](std::size_t p, double x, double y, double) {
        u0[0][p] = -std::cos(x) * std::sin(y);
        u0[1][p] = std::sin(x) * std::cos(y);
        b0[0][p] = -0.5 * std::sin(y);
        b0[1][p] = 0.5 * std::sin(2.0 * x);
    });
    return {u0, b0};
}

ErrorNorms error_norms(const Grid& g, const PlasmaState& w, const MhdState& ref, int s) {
    if (w.n.size() != g.size || ref.u[0].size() != g.size)
        throw ConfigError("error_norms: state/reference grid mismatch");
    ScalarField dn = w.n;
    for (double& x : dn.v) x -= 1.0;
    ErrorNorms e;
    e.err_n = sobolev_norm(g, dn, s);
    e.err_u = sobolev_norm(g, w.u - ref.u, s);
    e.err_b = sobolev_norm(g, w.B - ref.B, s);
    e.err_total = e.err_n + e.err_u + e.err_b;
    return e;
}

namespace {

// d^alpha f via one spectral multiplier (i k)^alpha
ScalarField multi_derivative(const Grid& g, const ScalarField& f, const std::array<int, 3>& a) {
    if (a[0] == 0 && a[1] == 0 && a[2] == 0) return f;
    auto fh = spectral::forward(g, f);
    using spectral::Complex;
    for_each_mode(g, [&](std::size_t idx, double k0, double k1, double k2) {
        Complex m(1.0, 0.0);
        for (int r = 0; r < a[0]; ++r) m *= Complex(0.0, k0);
        for (int r = 0; r < a[1]; ++r) m *= Complex(0.0, k1);
        for (int r = 0; r < a[2]; ++r) m *= Complex(0.0, k2);
        fh[idx] *= m;
    });
    return spectral::inverse(g, fh);
}

std::vector<std::array<int, 3>> multi_indices(int dim, int max_order) {
    std::vector<std::array<int, 3>> out;
    for (int a0 = 0; a0 <= max_order; ++a0)
        for (int a1 = 0; a0 + a1 <= max_order; ++a1) {
            if (dim == 2) {
                out.push_back({a0, a1, 0});
            } else {
                for (int a2 = 0; a0 + a1 + a2 <= max_order; ++a2)
                    out.push_back({a0, a1, a2});
            }
        }
    return out;
}

} // namespace

double modulated_energy(const Grid& g, const PlasmaState& w, const MhdState& ref,
                        const VectorField& grad_phi, double lambda,
                        const ModelParams& params, int max_order) {
    if (max_order > params.sobolev_index)
        throw ConfigError("modulated_energy: max_order exceeds the metric order s");

    ScalarField en = w.n;
    for (double& x : en.v) x -= 1.0;
    VectorField eu = w.u - ref.u;
    VectorField eb = w.B - ref.B;
    // grad Phi = lambda (grad phi^lambda + grad p0); the background potential
    // is minus the recovered pressure
    VectorField gphi = lambda * (grad_phi + spectral::grad(g, ref.p));

    ScalarField hp(g), nn = w.n;
    for (std::size_t p = 0; p < g.size; ++p) hp[p] = enthalpy_prime(w.n[p], params.gamma);

    double total = 0.0;
    for (const auto& a : multi_indices(g.dim, max_order)) {
        ScalarField na = multi_derivative(g, en, a);
        double acc = 0.0;
        for (std::size_t p = 0; p < g.size; ++p) acc += hp[p] * na[p] * na[p];
        for (int c = 0; c < 3; ++c) {
            ScalarField ua = multi_derivative(g, eu[c], a);
            ScalarField ba = multi_derivative(g, eb[c], a);
            ScalarField pa = multi_derivative(g, gphi[c], a);
            for (std::size_t p = 0; p < g.size; ++p)
                acc += nn[p] * ua[p] * ua[p] + ba[p] * ba[p] + pa[p] * pa[p];
        }
        total += acc / g.size * g.volume();
    }
    return total;
}

FitResult fit_loglog(const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.size() < 2) throw ConfigError("fit_loglog: need at least 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    const double m = static_cast<double>(pairs.size());
    for (auto [x, y] : pairs) {
        if (!(x > 0.0) || !(y > 0.0))
            throw ConfigError("fit_loglog: nonpositive value");
        const double lx = std::log(x), ly = std::log(y);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly; syy += ly * ly;
    }
    FitResult f;
    const double vxx = sxx - sx * sx / m;
    const double vxy = sxy - sx * sy / m;
    const double vyy = syy - sy * sy / m;
    if (vxx == 0.0) throw ConfigError("fit_loglog: degenerate abscissae");
    f.slope = vxy / vxx;
    f.intercept = (sy - f.slope * sx) / m;
    f.r_squared = (vyy == 0.0) ? 1.0 : std::clamp(vxy * vxy / (vxx * vyy), 0.0, 1.0);
    return f;
}

namespace {

ErrorSeries analyze_run(const Grid& g, const EpTrajectory& traj, const MhdTrajectory& ref,
                        const ModelParams& params, double lambda) {
    ErrorSeries es;
    es.lambda = lambda;
    es.status = traj.status == RunStatus::completed ? "completed" : "band_violation";
    const int s = params.sobolev_index;
    const std::size_t m = std::min(traj.snapshots.size(), ref.snapshots.size());
    for (std::size_t j = 0; j < m; ++j) {
        const auto& snap = traj.snapshots[j];
        const auto& rsnap = ref.snapshots[j];
        if (std::abs(snap.time - rsnap.time) > 1e-9) break; // band-violation tail
        ErrorNorms e = error_norms(g, snap.state, rsnap.state, s);
        es.times.push_back(snap.time);
        es.err_n.push_back(e.err_n);
        es.err_u.push_back(e.err_u);
        es.err_b.push_back(e.err_b);
        es.err_total.push_back(e.err_total);
        es.energy_series.push_back(
            modulated_energy(g, snap.state, rsnap.state, snap.grad_phi, lambda, params, s));
        VectorField gphi =
            lambda * (snap.grad_phi + spectral::grad(g, rsnap.state.p));
        es.d_series.push_back((e.err_total + sobolev_norm(g, gphi, s)) / lambda);
        es.sup_err = std::max(es.sup_err, e.err_total);
    }
    return es;
}

} // namespace

SweepResult sweep(const std::vector<double>& lambda_list, const Grid& g,
                  const ModelParams& params_template, const SolveConfig& config,
                  InitMode mode, double window_lo, double window_hi, int workers) {
    if (lambda_list.size() < 2)
        throw ConfigError("sweep: need at least 2 lambda values");
    for (std::size_t i = 0; i < lambda_list.size(); ++i) {
        const double l = lambda_list[i];
        if (!(l > 0.0) || l > 1.0) throw ConfigError("sweep: lambda out of (0,1]");
        if (i > 0 && !(l < lambda_list[i - 1]))
            throw ConfigError("sweep: lambda list must be strictly decreasing");
    }

    auto [u0, b0] = default_initial_fields(g);
    MhdState ref0(g);
    ref0.u = u0;
    ref0.B = b0;
    const MhdTrajectory ref = run_mhd(g, ref0, config);

    SweepResult result;
    result.series.resize(lambda_list.size());
    std::mutex err_mtx;
    std::exception_ptr first_error;
    auto run_one = [&](std::size_t i) {
        const double lambda = lambda_list[i];
        ModelParams params = params_template;
        params.lambda = lambda;
        try {
            PlasmaState init = well_prepared_init(g, u0, b0, lambda, mode);
            EpTrajectory traj = run_ep(g, init, params, config);
            result.series[i] = analyze_run(g, traj, ref, params, lambda);
        } catch (const BlowUpError&) {
            result.series[i].lambda = lambda;
            result.series[i].status = "blow_up";
        } catch (const VacuumError&) {
            result.series[i].lambda = lambda;
            result.series[i].status = "blow_up";
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mtx);
            if (!first_error) first_error = std::current_exception();
        }
    };

    if (workers <= 1) {
        for (std::size_t i = 0; i < lambda_list.size(); ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto drain = [&] {
            for (std::size_t i; (i = next.fetch_add(1)) < lambda_list.size();) run_one(i);
        };
        std::vector<std::thread> pool;
        const std::size_t nthreads =
            std::min<std::size_t>(workers, lambda_list.size());
        for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(drain);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    RateReport& rep = result.report;
    rep.window_lo = window_lo;
    rep.window_hi = window_hi;
    std::vector<std::pair<double, double>> fit_pairs;
    for (std::size_t i = 0; i < lambda_list.size(); ++i) {
        const auto& es = result.series[i];
        rep.entries.emplace_back(lambda_list[i], es.sup_err);
        rep.status.push_back(es.status);
        if (es.status == "completed" && es.sup_err > 0.0)
            fit_pairs.emplace_back(lambda_list[i], es.sup_err);
    }
    if (fit_pairs.size() >= 3) {
        FitResult f = fit_loglog(fit_pairs);
        rep.slope = f.slope;
        rep.intercept = f.intercept;
        rep.r_squared = f.r_squared;
        rep.fit_ok = true;
        rep.pass = rep.slope >= window_lo && rep.slope <= window_hi;
    }
    return result;
}

OrderCheck temporal_order_check(const Grid& g, const PlasmaState& initial,
                                const ModelParams& params, const SolveConfig& config) {
    SolveConfig c = config;
    c.fixed_dt = config.fixed_dt > 0.0 ? config.fixed_dt
                                       : stable_dt(g, initial, params, config);
    // make t_end an exact multiple of the base step
    const int steps = std::max(1, static_cast<int>(std::ceil(config.t_end / c.fixed_dt)));
    c.fixed_dt = config.t_end / steps;
    c.snapshot_stride = 1;

    auto final_state = [&](double dt) {
        SolveConfig cc = c;
        cc.fixed_dt = dt;
        return run_ep(g, initial, params, cc).snapshots.back().state;
    };
    PlasmaState a = final_state(c.fixed_dt);
    PlasmaState b = final_state(c.fixed_dt / 2.0);
    PlasmaState d = final_state(c.fixed_dt / 4.0);

    auto dist = [&](const PlasmaState& x, const PlasmaState& y) {
        double acc = 0.0;
        for (std::size_t p = 0; p < g.size; ++p) {
            const double dn = x.n[p] - y.n[p];
            acc += dn * dn;
            for (int cix = 0; cix < 3; ++cix) {
                const double du = x.u[cix][p] - y.u[cix][p];
                const double db = x.B[cix][p] - y.B[cix][p];
                acc += du * du + db * db;
            }
        }
        return std::sqrt(acc / g.size);
    };
    const double d1 = dist(a, b);
    const double d2 = dist(b, d);

    OrderCheck oc;
    if (d1 < 1e-13 || d2 < 1e-14) {
        oc.degenerate = true;
        return oc;
    }
    oc.order = std::log2(d1 / d2);
    return oc;
}

} // namespace qnmhd
