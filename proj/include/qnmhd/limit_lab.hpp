#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qnmhd/ep_solver.hpp"
#include "qnmhd/mhd_solver.hpp"

namespace qnmhd {

enum class InitMode { exact, relaxed };

// Initial data compatible with the limit: exact mode sets n = 1, u = u0,
// B = B0; relaxed mode adds fixed smooth perturbations, lambda^2 in the
// density and lambda in the velocity and magnetic field.
PlasmaState well_prepared_init(const Grid& g, const VectorField& u0, const VectorField& B0,
                               double lambda, InitMode mode);

// Taylor-Green velocity and an Orszag-Tang-type magnetic field, both exactly
// divergence-free on the grid.
std::pair<VectorField, VectorField> default_initial_fields(const Grid& g);

struct ErrorNorms {
    double err_n = 0.0;
    double err_u = 0.0;
    double err_b = 0.0;
    double err_total = 0.0;
};

ErrorNorms error_norms(const Grid& g, const PlasmaState& w, const MhdState& ref, int s);

// Sum over multi-indices |alpha| <= max_order of
//   int E_a^T A0(n) E_a + |grad Phi_a|^2 dx,
// E = (n-1, u-u0, B-B0) and grad Phi = lambda (grad phi + grad p0).
double modulated_energy(const Grid& g, const PlasmaState& w, const MhdState& ref,
                        const VectorField& grad_phi, double lambda,
                        const ModelParams& params, int max_order);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Least-squares line through (ln x, ln y); needs >= 2 positive pairs.
FitResult fit_loglog(const std::vector<std::pair<double, double>>& pairs);

// Per-lambda time series of the error metrics along an EP run.
struct ErrorSeries {
    double lambda = 0.0;
    std::vector<double> times;
    std::vector<double> err_n, err_u, err_b, err_total;
    std::vector<double> energy_series; // modulated energy
    std::vector<double> d_series;      // (||E||_s + ||grad Phi||_s) / lambda
    double sup_err = 0.0;
    std::string status = "completed";  // completed | band_violation | blow_up
};

struct RateReport {
    std::vector<std::pair<double, double>> entries; // (lambda, sup_err), decreasing lambda
    std::vector<std::string> status;                // per-lambda
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double window_lo = 0.8;
    double window_hi = 1.3;
    bool fit_ok = false;
    bool pass = false;
};

struct SweepResult {
    RateReport report;
    std::vector<ErrorSeries> series; // one per lambda, failed runs truncated
};

// One MHD reference trajectory, then per lambda an EP run on the shared
// snapshot schedule; fits log(sup_err) vs log(lambda) over surviving runs.
SweepResult sweep(const std::vector<double>& lambda_list, const Grid& g,
                  const ModelParams& params_template, const SolveConfig& config,
                  InitMode mode, double window_lo = 0.8, double window_hi = 1.3,
                  int workers = 1);

struct OrderCheck {
    double order = 0.0;
    bool degenerate = false; // differences at rounding level (exact equilibrium)
};

// Self-convergence of the integrator: runs dt, dt/2, dt/4 and returns
// log2 of the ratio of successive state differences.
OrderCheck temporal_order_check(const Grid& g, const PlasmaState& initial,
                                const ModelParams& params, const SolveConfig& config);

} // namespace qnmhd
