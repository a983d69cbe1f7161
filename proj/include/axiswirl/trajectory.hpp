#pragma once

#include <deque>
#include <functional>
#include <limits>

#include "axiswirl/field.hpp"

namespace axiswirl {

/**
 * Time-ordered snapshots with a look-back retention window.
 *
 * After appending a state at time t, snapshots older than t - retention are
 * discarded except the newest of them, so every window of length up to
 * retention ending at t stays covered. M0 = sup |Gamma| of the first
 * appended state is recorded once and kept.
 */
class Trajectory {
public:
    explicit Trajectory(double retention = std::numeric_limits<double>::infinity());

    /// Requires strictly increasing times and a common grid.
    void append(FlowState state);

    std::size_t size() const { return snapshots_.size(); }
    bool empty() const { return snapshots_.empty(); }
    const FlowState& operator[](std::size_t n) const { return snapshots_[n]; }
    const FlowState& front() const { return snapshots_.front(); }
    const FlowState& back() const { return snapshots_.back(); }
    const std::deque<FlowState>& snapshots() const { return snapshots_; }

    double retention() const { return retention_; }
    double m0() const { return m0_; }
    /// Overrides the recorded M0 (used when a trajectory is rebuilt from
    /// files whose first snapshot is not the initial state).
    void set_m0(double m0) { m0_ = m0; }

    /// Throws RetentionError unless snapshots cover [t - window, t].
    void require_window(double t, double window) const;

    /// Indices of snapshots with time in [t - window, t].
    std::vector<std::size_t> window_indices(double t, double window) const;

    /// Piecewise-linear trapezoid integral over [t - window, t] of a scalar
    /// functional of the state; the window start is interpolated.
    double integrate(double t, double window, const std::function<double(const FlowState&)>& f) const;

    /// Maximum of a functional over snapshots in [t - window, t].
    double sup(double t, double window, const std::function<double(const FlowState&)>& f) const;

private:
    double retention_;
    double m0_ = 0.0;
    bool m0_set_ = false;
    std::deque<FlowState> snapshots_;
};

}  // namespace axiswirl
