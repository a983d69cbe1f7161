#pragma once

#include <filesystem>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "axiswirl/config.hpp"
#include "axiswirl/scaling.hpp"

namespace axiswirl {

/// Exit codes of the batch commands.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitBlowUp = 2,
    kExitSolver = 3,
    kExitData = 4,
};

/// Directory for a run: explicit if given, else $AXISWIRL_OUTPUT/<stem>,
/// else ./axiswirl_out/<stem>.
std::filesystem::path output_directory(const std::string& explicit_dir, const std::string& stem);

/**
 * Runs a configured simulation into dir: snapshots snap_NNNNNN.axs every
 * snapshot_stride steps (plus the initial and final states), monitors.csv
 * with one row per monitor per snapshot, and a summary line per snapshot
 * on log. A blow-up or elliptic failure writes failure_dump.axs with the
 * last good state and returns a nonzero code.
 */
int cmd_run(const RunConfig& config, const std::filesystem::path& dir, std::ostream& log);

/// Replays monitors (';'-separated monitor lines) over the snapshot files
/// of dir, writing the MonitorSeries CSV to out. Throws RetentionError if a
/// monitor never produced a row.
void cmd_monitor(const std::filesystem::path& dir, const std::string& spec, std::ostream& out);

struct ConvergenceRow {
    std::size_t n_r = 0;
    std::size_t n_z = 0;
    double h = 0.0;
    double error_gamma = 0.0;
    double error_omega = 0.0;
    double order_gamma = 0.0;
    double order_omega = 0.0;
    std::size_t steps = 0;
    double max_divergence = 0.0;
};

struct MmsOptions {
    double r_min = 0.5;
    double r_max = 5.0;
    double z_min = -5.0;
    double z_max = 5.0;
    bool z_periodic = false;
    double t_end = 0.25;
    double cfl_advective = 0.4;
    double cfl_diffusive = 0.5;
    /// Called with every accepted state, the prepared initial state included.
    std::function<void(const FlowState&)> observer;
};

/// Parses "32x64,64x128" into (n_r, n_z) pairs.
std::vector<std::pair<std::size_t, std::size_t>> parse_grid_list(const std::string& text);

/**
 * Runs a manufactured family on each grid and tabulates max-norm errors of
 * Gamma and Omega at t_end. Orders compare successive rows with the mean
 * spacing h = sqrt(h_r h_z).
 */
std::vector<ConvergenceRow> mms_verify(const std::string& family,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& grids,
                                       const MmsOptions& options = {});

void write_convergence_table(std::ostream& out, const std::vector<ConvergenceRow>& rows);

/// scaling_check over the snapshot files of dir.
std::vector<ScalingIdentity> scale_check(const std::filesystem::path& dir, double k);
void write_scaling_table(std::ostream& out, const std::vector<ScalingIdentity>& rows);

}  // namespace axiswirl
