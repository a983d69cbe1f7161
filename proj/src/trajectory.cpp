#include "axiswirl/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "axiswirl/errors.hpp"

namespace axiswirl {

namespace {

double time_slack(double t) { return 1e-12 * std::max(1.0, std::abs(t)); }

}  // namespace

Trajectory::Trajectory(double retention) : retention_(retention) {
    if (!(retention >= 0.0)) {
        throw std::invalid_argument("retention must be non-negative");
    }
}

void Trajectory::append(FlowState state) {
    if (!snapshots_.empty()) {
        if (!(state.t > snapshots_.back().t)) {
            throw std::invalid_argument("trajectory times must increase strictly");
        }
        if (!(state.grid() == snapshots_.back().grid())) {
            throw std::invalid_argument("trajectory snapshots must share one grid");
        }
    }
    if (!m0_set_) {
        m0_ = state.gamma.max_abs();
        m0_set_ = true;
    }
    snapshots_.push_back(std::move(state));
    const double cutoff = snapshots_.back().t - retention_;
    while (snapshots_.size() >= 2 && snapshots_[1].t <= cutoff) {
        snapshots_.pop_front();
    }
}

void Trajectory::require_window(double t, double window) const {
    if (snapshots_.empty()) {
        throw RetentionError("empty trajectory");
    }
    const double start = t - window;
    if (snapshots_.front().t > start + time_slack(t) || snapshots_.back().t < t - time_slack(t)) {
        throw RetentionError("retained snapshots cover [" + std::to_string(snapshots_.front().t) +
                             ", " + std::to_string(snapshots_.back().t) + "], window needs [" +
                             std::to_string(start) + ", " + std::to_string(t) + "]");
    }
}

std::vector<std::size_t> Trajectory::window_indices(double t, double window) const {
    std::vector<std::size_t> idx;
    const double slack = time_slack(t);
    for (std::size_t n = 0; n < snapshots_.size(); ++n) {
        const double s = snapshots_[n].t;
        if (s >= t - window - slack && s <= t + slack) {
            idx.push_back(n);
        }
    }
    return idx;
}

double Trajectory::integrate(double t, double window,
                             const std::function<double(const FlowState&)>& f) const {
    require_window(t, window);
    const double start = t - window;
    const double slack = time_slack(t);
    double total = 0.0;
    double prev_t = 0.0;
    double prev_v = 0.0;
    bool have_prev = false;
    for (const FlowState& s : snapshots_) {
        if (s.t > t + slack) {
            break;
        }
        const double v = f(s);
        if (s.t <= start + slack) {
            prev_t = s.t;
            prev_v = v;
            have_prev = true;
            continue;
        }
        if (have_prev) {
            double a_t = prev_t;
            double a_v = prev_v;
            if (a_t < start) {
                const double theta = (start - a_t) / (s.t - a_t);
                a_v = a_v + theta * (v - a_v);
                a_t = start;
            }
            total += 0.5 * (s.t - a_t) * (a_v + v);
        }
        prev_t = s.t;
        prev_v = v;
        have_prev = true;
    }
    return total;
}

double Trajectory::sup(double t, double window,
                       const std::function<double(const FlowState&)>& f) const {
    require_window(t, window);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t n : window_indices(t, window)) {
        best = std::max(best, f(snapshots_[n]));
    }
    return best;
}

}  // namespace axiswirl
