#pragma once

#include <string>
#include <vector>

#include "qnmhd/limit_lab.hpp"
#include "qnmhd/trajectory.hpp"

namespace qnmhd {

// Binary snapshot container (see docs/file-formats.md for the byte layout):
// magic "QNSNAP1\n", a JSON header (uint64 length + bytes) describing system,
// grid, params and field list, then per-snapshot records of little-endian
// doubles: time, fields in row-major real-space layout, diagnostics.
void write_ep_snapshots(const std::string& path, const Grid& g, const ModelParams& params,
                        const SolveConfig& config, const EpTrajectory& traj);
void write_mhd_snapshots(const std::string& path, const Grid& g, const SolveConfig& config,
                         const MhdTrajectory& traj);

struct SnapshotFileInfo {
    std::string system; // "ep" | "mhd"
    int dim = 0;
    int n = 0;
    std::size_t snapshot_count = 0;
    std::vector<std::string> fields;
};

// Re-reads a snapshot file written by the writers above (round-trip checks
// and downstream tooling).
SnapshotFileInfo read_snapshot_info(const std::string& path);
EpTrajectory read_ep_snapshots(const std::string& path, Grid& g_out);

// CSV side-channels; fixed column sets, %.17g formatting for determinism.
void write_ep_diagnostics_csv(const std::string& path, const EpTrajectory& traj);
void write_mhd_diagnostics_csv(const std::string& path, const MhdTrajectory& traj);
void write_error_series_csv(const std::string& path, const ErrorSeries& es);
ErrorSeries read_error_series_csv(const std::string& path);

void write_rate_report_json(const std::string& path, const RateReport& rep);
RateReport read_rate_report_json(const std::string& path);

// Log-log scatter of (lambda, sup_err) with the fitted line, as standalone SVG.
void write_rate_plot_svg(const std::string& path, const RateReport& rep);

} // namespace qnmhd
