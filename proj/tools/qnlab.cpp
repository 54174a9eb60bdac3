#include <cstdio>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "qnmhd/checks.hpp"
#include "qnmhd/config.hpp"
#include "qnmhd/io.hpp"
#include "qnmhd/limit_lab.hpp"

namespace fs = std::filesystem;
using namespace qnmhd;

namespace {

int exit_code(ExitCode c) { return static_cast<int>(c); }

std::string lambda_tag(double l) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", l);
    std::string s = buf;
    for (char& c : s)
        if (c == '.') c = 'p';
    return s;
}

RunConfig load(const std::string& config_path, const std::string& output_override,
               const char* expected_system) {
    RunConfig c = parse_run_config(config_path);
    if (!output_override.empty()) c.output_dir = output_override;
    if (c.system != expected_system)
        throw ConfigError(std::string("config system is '") + c.system + "', expected '" +
                          expected_system + "'");
    return c;
}

int cmd_run_ep(const std::string& config_path, const std::string& output_override) {
    RunConfig c = load(config_path, output_override, "ep");
    const Grid g = make_grid(c.grid_dim, c.grid_n);
    auto [u0, b0] = default_initial_fields(g);
    PlasmaState init = well_prepared_init(g, u0, b0, c.model.lambda, c.init_mode);

    fs::create_directories(c.output_dir);
    try {
        EpTrajectory traj = run_ep(g, init, c.model, c.solve);
        write_ep_snapshots(c.output_dir + "/ep_snapshots.qns", g, c.model, c.solve, traj);
        write_ep_diagnostics_csv(c.output_dir + "/ep_diagnostics.csv", traj);
        if (traj.status == RunStatus::band_violation) {
            std::fprintf(stderr, "density band violated at t=%.6g; partial trajectory written\n",
                         traj.stop_time);
            return exit_code(ExitCode::band_violation);
        }
    } catch (const BlowUpError& e) {
        std::fprintf(stderr, "blow-up at t=%.6g: %s\n", e.time, e.what());
        return exit_code(ExitCode::blow_up);
    }
    return exit_code(ExitCode::ok);
}

int cmd_run_mhd(const std::string& config_path, const std::string& output_override) {
    RunConfig c = load(config_path, output_override, "mhd");
    const Grid g = make_grid(c.grid_dim, c.grid_n);
    auto [u0, b0] = default_initial_fields(g);
    MhdState init(g);
    init.u = u0;
    init.B = b0;

    fs::create_directories(c.output_dir);
    try {
        MhdTrajectory traj = run_mhd(g, init, c.solve);
        write_mhd_snapshots(c.output_dir + "/mhd_snapshots.qns", g, c.solve, traj);
        write_mhd_diagnostics_csv(c.output_dir + "/mhd_diagnostics.csv", traj);
    } catch (const BlowUpError& e) {
        std::fprintf(stderr, "blow-up at t=%.6g: %s\n", e.time, e.what());
        return exit_code(ExitCode::blow_up);
    }
    return exit_code(ExitCode::ok);
}

int cmd_sweep(const std::string& config_path, const std::string& output_override, int workers) {
    RunConfig c = load(config_path, output_override, "sweep");
    const Grid g = make_grid(c.grid_dim, c.grid_n);
    fs::create_directories(c.output_dir);

    SweepResult r = sweep(c.lambda_list, g, c.model, c.solve, c.init_mode, c.window_lo,
                          c.window_hi, workers);
    write_rate_report_json(c.output_dir + "/rate_report.json", r.report);
    write_rate_plot_svg(c.output_dir + "/rate_plot.svg", r.report);
    for (const auto& es : r.series)
        write_error_series_csv(c.output_dir + "/errors_lambda_" + lambda_tag(es.lambda) + ".csv",
                               es);

    for (std::size_t i = 0; i < r.report.entries.size(); ++i)
        std::printf("lambda %-8g sup_err %-12.6g %s\n", r.report.entries[i].first,
                    r.report.entries[i].second, r.report.status[i].c_str());
    if (!r.report.fit_ok) {
        std::fprintf(stderr, "rate fit impossible (fewer than 3 surviving runs)\n");
        return exit_code(ExitCode::rate_fail);
    }
    std::printf("slope %.4f  intercept %.4f  R^2 %.5f  window [%g, %g]  %s\n", r.report.slope,
                r.report.intercept, r.report.r_squared, r.report.window_lo, r.report.window_hi,
                r.report.pass ? "PASS" : "FAIL");
    return r.report.pass ? exit_code(ExitCode::ok) : exit_code(ExitCode::rate_fail);
}

int cmd_check() {
    auto results = run_structure_checks();
    bool all = true;
    std::printf("%-50s %-12s %-12s %s\n", "check", "value", "tolerance", "result");
    for (const auto& r : results) {
        std::printf("%-50s %-12.3e %-12.3e %s\n", r.name.c_str(), r.value, r.tolerance,
                    r.pass ? "pass" : "FAIL");
        all = all && r.pass;
    }
    return all ? exit_code(ExitCode::ok) : exit_code(ExitCode::failure);
}

int cmd_order(const std::string& config_path) {
    RunConfig c = parse_run_config(config_path);
    if (c.system != "order") throw ConfigError("config system must be 'order'");
    const Grid g = make_grid(c.grid_dim, c.grid_n);
    auto [u0, b0] = default_initial_fields(g);
    PlasmaState init = well_prepared_init(g, u0, b0, c.model.lambda, c.init_mode);
    OrderCheck oc = temporal_order_check(g, init, c.model, c.solve);
    if (oc.degenerate) {
        std::printf("degenerate (exact): state differences at rounding level\n");
        return exit_code(ExitCode::ok);
    }
    std::printf("observed temporal order: %.3f\n", oc.order);
    return (oc.order >= 3.5 && oc.order <= 4.5) ? exit_code(ExitCode::ok)
                                                : exit_code(ExitCode::failure);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudo-spectral Euler-Poisson-MHD quasi-neutral limit laboratory"};
    app.require_subcommand(1);

    std::string config_path, output_dir;
    int workers = 1;

    auto add_common = [&](CLI::App* sub, bool needs_config = true) {
        if (needs_config)
            sub->add_option("--config", config_path, "configuration file")->required();
        sub->add_option("--output", output_dir, "output directory override");
        sub->add_option("--workers", workers, "worker count for per-lambda parallelism");
    };

    auto* ep = app.add_subcommand("run-ep", "integrate the compressible system");
    auto* mhd = app.add_subcommand("run-mhd", "integrate the incompressible limit system");
    auto* sw = app.add_subcommand("sweep", "lambda sweep with convergence-rate fit");
    auto* chk = app.add_subcommand("check", "structure checks (symmetrizer, identities)");
    auto* ord = app.add_subcommand("order", "temporal self-convergence order check");
    add_common(ep);
    add_common(mhd);
    add_common(sw);
    add_common(chk, false);
    add_common(ord);

    CLI11_PARSE(app, argc, argv);

    try {
        if (ep->parsed()) return cmd_run_ep(config_path, output_dir);
        if (mhd->parsed()) return cmd_run_mhd(config_path, output_dir);
        if (sw->parsed()) return cmd_sweep(config_path, output_dir, workers);
        if (chk->parsed()) return cmd_check();
        if (ord->parsed()) return cmd_order(config_path);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return static_cast<int>(ExitCode::config_error);
    } catch (const SolvabilityError& e) {
        std::fprintf(stderr, "solvability error: %s\n", e.what());
        return static_cast<int>(ExitCode::solvability_error);
    } catch (const VacuumError& e) {
        std::fprintf(stderr, "vacuum error: %s\n", e.what());
        return static_cast<int>(ExitCode::blow_up);
    } catch (const BlowUpError& e) {
        std::fprintf(stderr, "blow-up at t=%.6g: %s\n", e.time, e.what());
        return static_cast<int>(ExitCode::blow_up);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return static_cast<int>(ExitCode::failure);
    }
    return 0;
}
