#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qnmhd/config.hpp"
#include "qnmhd/ep_solver.hpp"
#include "qnmhd/errors.hpp"
#include "qnmhd/io.hpp"
#include "qnmhd/limit_lab.hpp"

using namespace qnmhd;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "qnmhd_io_test") {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const char* name) const { return (path / name).string(); }
};

std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

EpTrajectory small_ep_trajectory(const Grid& g, const ModelParams& params) {
    PlasmaState w(g);
    for_each_point(g, [&](std::size_t p, double x, double y, double) {
        w.u[0][p] = -0.2 * std::cos(x) * std::sin(y);
        w.u[1][p] = 0.2 * std::sin(x) * std::cos(y);
        w.B[0][p] = 0.1 * std::sin(y);
    });
    SolveConfig cfg;
    cfg.t_end = 0.04;
    cfg.snapshot_stride = 2;
    return run_ep(g, w, params, cfg);
}

} // namespace

TEST_CASE("ep snapshot round trip") {
    TempDir tmp;
    Grid g = make_grid(2, 16);
    ModelParams params;
    params.lambda = 0.2;
    SolveConfig cfg;
    cfg.t_end = 0.04;
    cfg.snapshot_stride = 2;
    EpTrajectory traj = small_ep_trajectory(g, params);

    const std::string path = tmp.file("ep.qns");
    write_ep_snapshots(path, g, params, cfg, traj);

    SnapshotFileInfo info = read_snapshot_info(path);
    CHECK(info.system == "ep");
    CHECK(info.dim == 2);
    CHECK(info.n == 16);
    CHECK(info.snapshot_count == traj.snapshots.size());
    CHECK(info.fields.size() == 10);
    CHECK(info.fields.front() == "n");

    Grid g2;
    EpTrajectory back = read_ep_snapshots(path, g2);
    CHECK(g2.n == g.n);
    REQUIRE(back.snapshots.size() == traj.snapshots.size());
    CHECK(back.status == traj.status);
    for (std::size_t j = 0; j < traj.snapshots.size(); ++j) {
        CHECK(back.snapshots[j].time == traj.snapshots[j].time);
        for (std::size_t p = 0; p < g.size; ++p) {
            CHECK(back.snapshots[j].state.n[p] == traj.snapshots[j].state.n[p]);
            for (int c = 0; c < 3; ++c) {
                CHECK(back.snapshots[j].state.u[c][p] == traj.snapshots[j].state.u[c][p]);
                CHECK(back.snapshots[j].state.B[c][p] == traj.snapshots[j].state.B[c][p]);
                CHECK(back.snapshots[j].grad_phi[c][p] == traj.snapshots[j].grad_phi[c][p]);
            }
        }
        CHECK(back.snapshots[j].diag.energy == traj.snapshots[j].diag.energy);
    }

    SUBCASE("corrupt magic is rejected") {
        const std::string bad = tmp.file("bad.qns");
        std::ofstream(bad, std::ios::binary) << "NOTASNAPFILE";
        CHECK_THROWS_AS(read_snapshot_info(bad), ConfigError);
    }

    SUBCASE("deterministic bytes") {
        const std::string again = tmp.file("ep2.qns");
        write_ep_snapshots(again, g, params, cfg, traj);
        CHECK(slurp(path) == slurp(again));
    }
}

TEST_CASE("diagnostics and error-series CSV") {
    TempDir tmp;
    Grid g = make_grid(2, 16);
    ModelParams params;
    params.lambda = 0.2;
    EpTrajectory traj = small_ep_trajectory(g, params);

    SUBCASE("ep diagnostics header and row count") {
        const std::string path = tmp.file("diag.csv");
        write_ep_diagnostics_csv(path, traj);
        std::ifstream in(path);
        std::string line;
        std::getline(in, line);
        CHECK(line == "time,mass,energy,divB_norm,n_min,n_max");
        std::size_t rows = 0;
        while (std::getline(in, line))
            if (!line.empty()) ++rows;
        CHECK(rows == traj.snapshots.size());
    }

    SUBCASE("error series round trip") {
        ErrorSeries es;
        es.lambda = 0.05;
        es.status = "completed";
        es.times = {0.0, 0.1, 0.2};
        es.err_n = {0.0, 1e-4, 2.5e-4};
        es.err_u = {0.0, 3e-3, 0.017};
        es.err_b = {0.0, 2e-4, 4e-4};
        es.err_total = {0.0, 3.3e-3, 0.01765};
        es.energy_series = {0.1, 0.11, 0.12};
        es.d_series = {1.0, 1.2, 1.1};
        es.sup_err = 0.01765;

        const std::string path = tmp.file("series.csv");
        write_error_series_csv(path, es);
        ErrorSeries back = read_error_series_csv(path);
        REQUIRE(back.times.size() == 3);
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(back.times[j] == es.times[j]);
            CHECK(back.err_u[j] == es.err_u[j]);
            CHECK(back.err_total[j] == es.err_total[j]);
            CHECK(back.energy_series[j] == es.energy_series[j]);
            CHECK(back.d_series[j] == es.d_series[j]);
        }

        // strict header check on read-back
        const std::string bad = tmp.file("bad.csv");
        std::ofstream(bad) << "time,oops\n0,1\n";
        CHECK_THROWS_AS(read_error_series_csv(bad), ConfigError);
    }
}

TEST_CASE("rate report json and svg plot") {
    TempDir tmp;
    RateReport rep;
    rep.entries = {{0.2, 1.9}, {0.1, 0.93}, {0.05, 0.48}, {0.025, 0.24}};
    rep.status = {"completed", "completed", "completed", "completed"};
    rep.slope = 0.997;
    rep.intercept = 1.21;
    rep.r_squared = 0.999;
    rep.window_lo = 0.8;
    rep.window_hi = 1.3;
    rep.fit_ok = true;
    rep.pass = true;

    const std::string jpath = tmp.file("rate.json");
    write_rate_report_json(jpath, rep);
    RateReport back = read_rate_report_json(jpath);
    REQUIRE(back.entries.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(back.entries[i].first == rep.entries[i].first);
        CHECK(back.entries[i].second == rep.entries[i].second);
        CHECK(back.status[i] == rep.status[i]);
    }
    CHECK(back.slope == rep.slope);
    CHECK(back.r_squared == rep.r_squared);
    CHECK(back.fit_ok == rep.fit_ok);
    CHECK(back.pass == rep.pass);

    const std::string spath = tmp.file("rate.svg");
    write_rate_plot_svg(spath, rep);
    std::string svg = slurp(spath);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("circle") != std::string::npos); // data points
    CHECK(svg.find("line") != std::string::npos);   // fitted line / axes
}

TEST_CASE("run config parsing") {
    SUBCASE("full sweep config with defaults") {
        RunConfig c = parse_run_config_text(R"({
            "system": "sweep",
            "grid": {"dim": 2, "n": 64},
            "model": {"gamma": 2.0, "lambda_list": [0.1, 0.05, 0.025]},
            "solve": {"t_end": 0.5},
            "metrics": {"s": 2, "max_order": 2},
            "init": {"mode": "relaxed"},
            "rate": {"window": [0.8, 1.3]},
            "output": {"dir": "somewhere"}
        })");
        CHECK(c.system == "sweep");
        CHECK(c.grid_n == 64);
        CHECK(c.lambda_list.size() == 3);
        CHECK(c.init_mode == InitMode::relaxed);
        CHECK(c.output_dir == "somewhere");
        CHECK(c.solve.cfl == 0.4);             // default
        CHECK(c.solve.snapshot_stride == 25);  // default
    }

    SUBCASE("minimal config") {
        RunConfig c = parse_run_config_text(R"({"system": "ep"})");
        CHECK(c.grid_n == 64);
        CHECK(c.model.gamma == 2.0);
        CHECK(c.init_mode == InitMode::exact);
    }

    SUBCASE("rejections") {
        CHECK_THROWS_AS(parse_run_config_text("not json"), ConfigError);
        CHECK_THROWS_AS(parse_run_config_text(R"({"grid": {"n": 64}})"), ConfigError);
        CHECK_THROWS_AS(parse_run_config_text(R"({"system": "warp"})"), ConfigError);
        CHECK_THROWS_AS(parse_run_config_text(R"({"system": "ep", "surprise": 1})"),
                        ConfigError);
        CHECK_THROWS_AS(parse_run_config_text(R"({"system": "ep", "grid": {"m": 3}})"),
                        ConfigError);
        CHECK_THROWS_AS(parse_run_config_text(R"({"system": "ep", "model": {"gamma": 1.0}})"),
                        ConfigError);
        CHECK_THROWS_AS(
            parse_run_config_text(R"({"system": "ep", "model": {"lambda": 1.5}})"),
            ConfigError);
        CHECK_THROWS_AS(parse_run_config_text(R"({"system": "ep", "grid": {"n": 63}})"),
                        ConfigError);
        // sweep needs >= 3 strictly decreasing lambdas
        CHECK_THROWS_AS(parse_run_config_text(
                            R"({"system": "sweep", "model": {"lambda_list": [0.1, 0.05]}})"),
                        ConfigError);
        CHECK_THROWS_AS(
            parse_run_config_text(
                R"({"system": "sweep", "model": {"lambda_list": [0.05, 0.1, 0.2]}})"),
            ConfigError);
        CHECK_THROWS_AS(
            parse_run_config_text(R"({"system": "ep", "init": {"mode": "sloppy"}})"),
            ConfigError);
        CHECK_THROWS_AS(
            parse_run_config_text(R"({"system": "ep", "init": {"preset": "vortex"}})"),
            ConfigError);
        CHECK_THROWS_AS(
            parse_run_config_text(R"({"system": "ep", "rate": {"window": [1.3, 0.8]}})"),
            ConfigError);
        CHECK_THROWS_AS(
            parse_run_config_text(R"({"system": "ep", "metrics": {"s": 2, "max_order": 5}})"),
            ConfigError);
    }

    SUBCASE("file loader") {
        TempDir tmp;
        const std::string p = tmp.file("cfg.json");
        std::ofstream(p) << R"({"system": "mhd", "grid": {"n": 32}})";
        RunConfig c = parse_run_config(p);
        CHECK(c.system == "mhd");
        CHECK(c.grid_n == 32);
        CHECK_THROWS_AS(parse_run_config(tmp.file("missing.json")), ConfigError);
    }
}
