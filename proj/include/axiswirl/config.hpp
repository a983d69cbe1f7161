#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "axiswirl/geometry.hpp"

namespace axiswirl {

struct GridSpec {
    double r_min = 0.0;
    double r_max = 0.0;
    double z_min = 0.0;
    double z_max = 0.0;
    std::size_t n_r = 0;
    std::size_t n_z = 0;
    bool z_periodic = false;

    Grid build() const;
};

enum class MonitorKind { thm12, thm11, stream, vz, lambda, kbar, oscillation, biot_savart };

/// One monitor line: `name @ key=value,key=value`.
struct MonitorSpec {
    MonitorKind kind = MonitorKind::vz;
    std::string text;
    double r = 0.0;
    double z = 0.0;
    double sigma1 = 1.0;
    double scale = 1.0;
    double p = 2.0;

    Point point() const { return Point::cylindrical(r, z); }
    /// Time window the monitor looks back over.
    double look_back() const;
};

std::string monitor_name(MonitorKind kind);
/// Parses a monitor line; throws ConfigError keyed "monitor".
MonitorSpec parse_monitor(const std::string& text);

struct RunConfig {
    GridSpec grid;
    /// Manufactured tag or unforced initial condition name; empty when
    /// starting from a snapshot file.
    std::string initial_family;
    double amplitude = 1.0;
    std::string initial_snapshot;
    double t_end = 0.0;
    double cfl_advective = 0.4;
    double cfl_diffusive = 0.5;
    /// Manufactured tag whose forcing is applied; empty for unforced runs.
    std::string forcing;
    std::size_t snapshot_stride = 10;
    std::size_t max_steps = 0;
    /// Trajectory retention; defaults to the longest monitor look-back.
    double retention = 0.0;
    std::vector<MonitorSpec> monitors;
};

/**
 * Parses `key = value` lines grouped under [grid], [initial], [run] and
 * [monitors]. '#' starts a comment. overrides maps "section.key" to a value
 * and replaces the file's setting. Unknown keys, bad values and violated
 * constraints throw ConfigError naming the key (or the monitor).
 */
RunConfig parse_config(const std::string& text,
                       const std::map<std::string, std::string>& overrides = {});

}  // namespace axiswirl
