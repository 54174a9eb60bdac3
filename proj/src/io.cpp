#include "qnmhd/io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qnmhd/errors.hpp"

namespace qnmhd {

using nlohmann::json;

namespace {

constexpr char magic[8] = {'Q', 'N', 'S', 'N', 'A', 'P', '1', '\n'};

void write_doubles(std::ofstream& out, const double* p, std::size_t count) {
    out.write(reinterpret_cast<const char*>(p), static_cast<std::streamsize>(count * 8));
}

void read_doubles(std::ifstream& in, double* p, std::size_t count) {
    in.read(reinterpret_cast<char*>(p), static_cast<std::streamsize>(count * 8));
    if (!in) throw ConfigError("snapshot file truncated");
}

void write_header(std::ofstream& out, const json& header) {
    out.write(magic, sizeof magic);
    const std::string text = header.dump();
    const std::uint64_t len = text.size();
    out.write(reinterpret_cast<const char*>(&len), 8);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

json read_header(std::ifstream& in) {
    char m[8];
    in.read(m, 8);
    if (!in || std::memcmp(m, magic, 8) != 0)
        throw ConfigError("not a snapshot file (bad magic)");
    std::uint64_t len = 0;
    in.read(reinterpret_cast<char*>(&len), 8);
    std::string text(len, '\0');
    in.read(text.data(), static_cast<std::streamsize>(len));
    if (!in) throw ConfigError("snapshot header truncated");
    return json::parse(text);
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

void write_ep_snapshots(const std::string& path, const Grid& g, const ModelParams& params,
                        const SolveConfig& config, const EpTrajectory& traj) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    json header = {
        {"system", "ep"},
        {"grid", {{"dim", g.dim}, {"n", g.n}}},
        {"params", {{"lambda", params.lambda}, {"gamma", params.gamma},
                    {"s", params.sobolev_index}, {"dealias", params.dealias}}},
        {"config", {{"t_end", config.t_end}, {"cfl", config.cfl},
                    {"dt_lambda_factor", config.dt_lambda_factor},
                    {"snapshot_stride", config.snapshot_stride}}},
        {"fields", {"n", "u0", "u1", "u2", "B0", "B1", "B2", "gphi0", "gphi1", "gphi2"}},
        {"diagnostics", {"mass", "energy", "div_b", "n_min", "n_max"}},
        {"snapshot_count", traj.snapshots.size()},
        {"status", to_string(traj.status)},
        {"stop_time", traj.stop_time},
    };
    write_header(out, header);
    for (const auto& s : traj.snapshots) {
        write_doubles(out, &s.time, 1);
        write_doubles(out, s.state.n.v.data(), g.size);
        for (int c = 0; c < 3; ++c) write_doubles(out, s.state.u[c].v.data(), g.size);
        for (int c = 0; c < 3; ++c) write_doubles(out, s.state.B[c].v.data(), g.size);
        for (int c = 0; c < 3; ++c) write_doubles(out, s.grad_phi[c].v.data(), g.size);
        const double diag[5] = {s.diag.mass, s.diag.energy, s.diag.div_b, s.diag.n_min,
                                s.diag.n_max};
        write_doubles(out, diag, 5);
    }
}

void write_mhd_snapshots(const std::string& path, const Grid& g, const SolveConfig& config,
                         const MhdTrajectory& traj) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    json header = {
        {"system", "mhd"},
        {"grid", {{"dim", g.dim}, {"n", g.n}}},
        {"config", {{"t_end", config.t_end}, {"cfl", config.cfl},
                    {"snapshot_stride", config.snapshot_stride}}},
        {"fields", {"u0", "u1", "u2", "B0", "B1", "B2", "p"}},
        {"diagnostics", {"energy", "cross_helicity", "div_u", "div_b"}},
        {"snapshot_count", traj.snapshots.size()},
    };
    write_header(out, header);
    for (const auto& s : traj.snapshots) {
        write_doubles(out, &s.time, 1);
        for (int c = 0; c < 3; ++c) write_doubles(out, s.state.u[c].v.data(), g.size);
        for (int c = 0; c < 3; ++c) write_doubles(out, s.state.B[c].v.data(), g.size);
        write_doubles(out, s.state.p.v.data(), g.size);
        const double diag[4] = {s.diag.energy, s.diag.cross_helicity, s.diag.div_u,
                                s.diag.div_b};
        write_doubles(out, diag, 4);
    }
}

SnapshotFileInfo read_snapshot_info(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path);
    json h = read_header(in);
    SnapshotFileInfo info;
    info.system = h.at("system").get<std::string>();
    info.dim = h.at("grid").at("dim").get<int>();
    info.n = h.at("grid").at("n").get<int>();
    info.snapshot_count = h.at("snapshot_count").get<std::size_t>();
    for (const auto& f : h.at("fields")) info.fields.push_back(f.get<std::string>());
    return info;
}

EpTrajectory read_ep_snapshots(const std::string& path, Grid& g_out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path);
    json h = read_header(in);
    if (h.at("system") != "ep") throw ConfigError(path + " is not an ep snapshot file");
    g_out = make_grid(h.at("grid").at("dim").get<int>(), h.at("grid").at("n").get<int>());
    const Grid& g = g_out;
    EpTrajectory traj;
    traj.status = h.at("status") == "completed" ? RunStatus::completed
                                                : RunStatus::band_violation;
    traj.stop_time = h.at("stop_time").get<double>();
    const std::size_t count = h.at("snapshot_count").get<std::size_t>();
    for (std::size_t i = 0; i < count; ++i) {
        EpSnapshot s;
        s.state = PlasmaState(g);
        s.grad_phi = VectorField(g);
        read_doubles(in, &s.time, 1);
        read_doubles(in, s.state.n.v.data(), g.size);
        for (int c = 0; c < 3; ++c) read_doubles(in, s.state.u[c].v.data(), g.size);
        for (int c = 0; c < 3; ++c) read_doubles(in, s.state.B[c].v.data(), g.size);
        for (int c = 0; c < 3; ++c) read_doubles(in, s.grad_phi[c].v.data(), g.size);
        double diag[5];
        read_doubles(in, diag, 5);
        s.diag.mass = diag[0];
        s.diag.energy = diag[1];
        s.diag.div_b = diag[2];
        s.diag.n_min = diag[3];
        s.diag.n_max = diag[4];
        traj.snapshots.push_back(std::move(s));
    }
    return traj;
}

void write_ep_diagnostics_csv(const std::string& path, const EpTrajectory& traj) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    out << "time,mass,energy,divB_norm,n_min,n_max\n";
    for (const auto& s : traj.snapshots)
        out << fmt(s.time) << ',' << fmt(s.diag.mass) << ',' << fmt(s.diag.energy) << ','
            << fmt(s.diag.div_b) << ',' << fmt(s.diag.n_min) << ',' << fmt(s.diag.n_max)
            << '\n';
}

void write_mhd_diagnostics_csv(const std::string& path, const MhdTrajectory& traj) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    out << "time,energy,cross_helicity,divU_norm,divB_norm\n";
    for (const auto& s : traj.snapshots)
        out << fmt(s.time) << ',' << fmt(s.diag.energy) << ',' << fmt(s.diag.cross_helicity)
            << ',' << fmt(s.diag.div_u) << ',' << fmt(s.diag.div_b) << '\n';
}

void write_error_series_csv(const std::string& path, const ErrorSeries& es) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    out << "time,err_n,err_u,err_B,err_total,mod_energy,D\n";
    for (std::size_t i = 0; i < es.times.size(); ++i)
        out << fmt(es.times[i]) << ',' << fmt(es.err_n[i]) << ',' << fmt(es.err_u[i]) << ','
            << fmt(es.err_b[i]) << ',' << fmt(es.err_total[i]) << ','
            << fmt(es.energy_series[i]) << ',' << fmt(es.d_series[i]) << '\n';
}

ErrorSeries read_error_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    ErrorSeries es;
    std::string line;
    if (!std::getline(in, line) || line != "time,err_n,err_u,err_B,err_total,mod_energy,D")
        throw ConfigError(path + ": unexpected error-series header");
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        double v[7];
        char comma;
        for (int i = 0; i < 7; ++i) {
            if (!(ss >> v[i])) throw ConfigError(path + ": malformed row");
            if (i < 6) ss >> comma;
        }
        es.times.push_back(v[0]);
        es.err_n.push_back(v[1]);
        es.err_u.push_back(v[2]);
        es.err_b.push_back(v[3]);
        es.err_total.push_back(v[4]);
        es.energy_series.push_back(v[5]);
        es.d_series.push_back(v[6]);
    }
    for (double e : es.err_total) es.sup_err = std::max(es.sup_err, e);
    return es;
}

void write_rate_report_json(const std::string& path, const RateReport& rep) {
    json j;
    j["lambdas"] = json::array();
    j["sup_errors"] = json::array();
    for (auto [l, e] : rep.entries) {
        j["lambdas"].push_back(l);
        j["sup_errors"].push_back(e);
    }
    j["status"] = rep.status;
    j["slope"] = rep.slope;
    j["intercept"] = rep.intercept;
    j["r_squared"] = rep.r_squared;
    j["window"] = {rep.window_lo, rep.window_hi};
    j["fit_ok"] = rep.fit_ok;
    j["pass"] = rep.pass;
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
}

RateReport read_rate_report_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    json j = json::parse(in);
    RateReport rep;
    const auto& ls = j.at("lambdas");
    const auto& es = j.at("sup_errors");
    for (std::size_t i = 0; i < ls.size(); ++i)
        rep.entries.emplace_back(ls[i].get<double>(), es[i].get<double>());
    for (const auto& s : j.at("status")) rep.status.push_back(s.get<std::string>());
    rep.slope = j.at("slope").get<double>();
    rep.intercept = j.at("intercept").get<double>();
    rep.r_squared = j.at("r_squared").get<double>();
    rep.window_lo = j.at("window")[0].get<double>();
    rep.window_hi = j.at("window")[1].get<double>();
    rep.fit_ok = j.at("fit_ok").get<bool>();
    rep.pass = j.at("pass").get<bool>();
    return rep;
}

void write_rate_plot_svg(const std::string& path, const RateReport& rep) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");

    const double W = 640, H = 480, ml = 70, mr = 20, mt = 30, mb = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    std::vector<std::pair<double, double>> pts; // (log10 lambda, log10 err)
    for (auto [l, e] : rep.entries) {
        if (!(l > 0.0) || !(e > 0.0)) continue;
        const double x = std::log10(l), y = std::log10(e);
        pts.emplace_back(x, y);
        xmin = std::min(xmin, x); xmax = std::max(xmax, x);
        ymin = std::min(ymin, y); ymax = std::max(ymax, y);
    }
    if (pts.empty()) { xmin = -2; xmax = 0; ymin = -2; ymax = 0; }
    if (xmax - xmin < 1e-6) { xmin -= 0.5; xmax += 0.5; }
    if (ymax - ymin < 1e-6) { ymin -= 0.5; ymax += 0.5; }
    const double padx = 0.08 * (xmax - xmin), pady = 0.08 * (ymax - ymin);
    xmin -= padx; xmax += padx; ymin -= pady; ymax += pady;
    auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto Y = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n"
        << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n"
        << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
        << H - mb << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << H - mb << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
        << "\" text-anchor=\"middle\" font-size=\"14\">log10 lambda</text>\n"
        << "<text x=\"18\" y=\"" << H / 2
        << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 " << H / 2
        << ")\">log10 sup error</text>\n";
    if (rep.fit_ok) {
        const double l10 = std::log(10.0);
        auto fit_y = [&](double x) {
            // report line is in natural logs: ln y = slope * ln x + intercept
            return (rep.slope * (x * l10) + rep.intercept) / l10;
        };
        out << "<line x1=\"" << X(xmin) << "\" y1=\"" << Y(fit_y(xmin)) << "\" x2=\""
            << X(xmax) << "\" y2=\"" << Y(fit_y(xmax))
            << "\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";
        char label[128];
        std::snprintf(label, sizeof label, "slope %.3f, R^2 %.4f", rep.slope, rep.r_squared);
        out << "<text x=\"" << ml + 12 << "\" y=\"" << mt + 18
            << "\" font-size=\"13\" fill=\"#d62728\">" << label << "</text>\n";
    }
    for (auto [x, y] : pts)
        out << "<circle cx=\"" << X(x) << "\" cy=\"" << Y(y)
            << "\" r=\"4\" fill=\"#1f77b4\"/>\n";
    out << "</svg>\n";
}

} // namespace qnmhd
