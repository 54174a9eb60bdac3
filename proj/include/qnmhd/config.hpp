#pragma once

#include <string>
#include <vector>

#include "qnmhd/limit_lab.hpp"
#include "qnmhd/params.hpp"
#include "qnmhd/solve_config.hpp"

namespace qnmhd {

// File-backed run configuration; strict parse (unknown keys rejected, every
// owning-module constraint re-validated).
struct RunConfig {
    std::string system;             // ep | mhd | sweep | check | order
    int grid_dim = 2;
    int grid_n = 64;
    ModelParams model;
    std::vector<double> lambda_list; // sweep only
    SolveConfig solve;
    int max_order = 2;
    std::string init_preset = "taylor-green-ot";
    InitMode init_mode = InitMode::exact;
    std::string output_dir = "out";
    double window_lo = 0.8;
    double window_hi = 1.3;

    void validate() const;
};

RunConfig parse_run_config(const std::string& path);
RunConfig parse_run_config_text(const std::string& text); // for tests

} // namespace qnmhd
