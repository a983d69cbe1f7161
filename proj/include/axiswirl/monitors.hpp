#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "axiswirl/config.hpp"
#include "axiswirl/diagnostics.hpp"
#include "axiswirl/trajectory.hpp"

namespace axiswirl {

/// Evaluates one monitor at the newest snapshot. Returns nullopt while the
/// retained snapshots do not yet reach back over the monitor's window.
std::optional<BoundReport> evaluate_monitor(const MonitorSpec& spec, const Trajectory& trajectory);

/// MonitorSeries CSV: time,monitor,point_or_region,lhs,rhs,implied_constant,clipped
std::string monitor_csv_header();
std::string monitor_csv_row(const BoundReport& report);

/// Appends one row per monitor that can be evaluated at the newest snapshot.
/// Returns how many rows were written.
std::size_t write_monitor_rows(std::ostream& out, const std::vector<MonitorSpec>& specs,
                               const Trajectory& trajectory, std::vector<std::size_t>* counts = nullptr);

}  // namespace axiswirl
