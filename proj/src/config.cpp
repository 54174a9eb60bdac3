#include "qnmhd/config.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "qnmhd/errors.hpp"
#include "qnmhd/grid.hpp"

namespace qnmhd {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("unknown key '" + where + it.key() + "'");
}

} // namespace

void RunConfig::validate() const {
    static const std::set<std::string> systems = {"ep", "mhd", "sweep", "check", "order"};
    if (!systems.count(system))
        throw ConfigError("system must be one of ep|mhd|sweep|check|order, got '" + system + "'");
    make_grid(grid_dim, grid_n); // range/parity checks
    model.validate();
    solve.validate();
    if (max_order < 0 || max_order > model.sobolev_index)
        throw ConfigError("metrics.max_order must be in [0, metrics.s]");
    if (system == "sweep") {
        if (lambda_list.size() < 3)
            throw ConfigError("sweep needs at least 3 lambda values");
        for (std::size_t i = 0; i < lambda_list.size(); ++i) {
            if (!(lambda_list[i] > 0.0) || lambda_list[i] > 1.0)
                throw ConfigError("lambda_list entries must be in (0,1]");
            if (i > 0 && !(lambda_list[i] < lambda_list[i - 1]))
                throw ConfigError("lambda_list must be strictly decreasing");
        }
    }
    if (!(window_lo < window_hi)) throw ConfigError("rate.window must be an interval");
    if (init_preset != "taylor-green-ot")
        throw ConfigError("unknown init.preset '" + init_preset + "'");
}

RunConfig parse_run_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }

    reject_unknown(j, {"system", "grid", "model", "solve", "metrics", "init", "output", "rate"},
                   "");
    if (!j.contains("system")) throw ConfigError("config is missing 'system'");
    RunConfig c;
    c.system = j["system"].get<std::string>();

    if (j.contains("grid")) {
        const auto& g = j["grid"];
        reject_unknown(g, {"dim", "n"}, "grid.");
        if (g.contains("dim")) c.grid_dim = g["dim"].get<int>();
        if (g.contains("n")) c.grid_n = g["n"].get<int>();
    }
    if (j.contains("model")) {
        const auto& m = j["model"];
        reject_unknown(m, {"gamma", "lambda", "lambda_list"}, "model.");
        if (m.contains("gamma")) c.model.gamma = m["gamma"].get<double>();
        if (m.contains("lambda")) c.model.lambda = m["lambda"].get<double>();
        if (m.contains("lambda_list"))
            c.lambda_list = m["lambda_list"].get<std::vector<double>>();
    }
    if (j.contains("solve")) {
        const auto& s = j["solve"];
        reject_unknown(s, {"t_end", "cfl", "dt_lambda_factor", "snapshot_stride", "fixed_dt"},
                       "solve.");
        if (s.contains("t_end")) c.solve.t_end = s["t_end"].get<double>();
        if (s.contains("cfl")) c.solve.cfl = s["cfl"].get<double>();
        if (s.contains("dt_lambda_factor"))
            c.solve.dt_lambda_factor = s["dt_lambda_factor"].get<double>();
        if (s.contains("snapshot_stride"))
            c.solve.snapshot_stride = s["snapshot_stride"].get<int>();
        if (s.contains("fixed_dt")) c.solve.fixed_dt = s["fixed_dt"].get<double>();
    }
    if (j.contains("metrics")) {
        const auto& m = j["metrics"];
        reject_unknown(m, {"s", "max_order"}, "metrics.");
        if (m.contains("s")) c.model.sobolev_index = m["s"].get<int>();
        if (m.contains("max_order")) c.max_order = m["max_order"].get<int>();
    }
    if (j.contains("init")) {
        const auto& i = j["init"];
        reject_unknown(i, {"preset", "mode"}, "init.");
        if (i.contains("preset")) c.init_preset = i["preset"].get<std::string>();
        if (i.contains("mode")) {
            const std::string m = i["mode"].get<std::string>();
            if (m == "exact") c.init_mode = InitMode::exact;
            else if (m == "relaxed") c.init_mode = InitMode::relaxed;
            else throw ConfigError("init.mode must be exact or relaxed, got '" + m + "'");
        }
    }
    if (j.contains("output")) {
        const auto& o = j["output"];
        reject_unknown(o, {"dir"}, "output.");
        if (o.contains("dir")) c.output_dir = o["dir"].get<std::string>();
    }
    if (j.contains("rate")) {
        const auto& r = j["rate"];
        reject_unknown(r, {"window"}, "rate.");
        if (r.contains("window")) {
            auto w = r["window"].get<std::vector<double>>();
            if (w.size() != 2) throw ConfigError("rate.window must have 2 entries");
            c.window_lo = w[0];
            c.window_hi = w[1];
        }
    }
    c.validate();
    return c;
}

RunConfig parse_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_run_config_text(text);
}

} // namespace qnmhd
