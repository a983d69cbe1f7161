#include "axiswirl/monitors.hpp"

#include <cstdio>

#include "axiswirl/errors.hpp"

namespace axiswirl {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::optional<BoundReport> evaluate_monitor(const MonitorSpec& spec, const Trajectory& trajectory) {
    if (trajectory.empty()) {
        return std::nullopt;
    }
    const FlowState& now = trajectory.back();
    const double window = spec.look_back();
    const double reach = now.t - trajectory.front().t;
    if (window > 0.0 && reach < window * (1.0 - 1e-12)) {
        return std::nullopt;
    }
    BoundReport rep;
    switch (spec.kind) {
        case MonitorKind::thm12:
            rep = thm12_monitor(trajectory, spec.point());
            break;
        case MonitorKind::thm11:
            rep = thm11_monitor(now, spec.point());
            break;
        case MonitorKind::stream:
            rep = stream_monitor(now, spec.point());
            break;
        case MonitorKind::vz:
            rep = vz_report(now);
            break;
        case MonitorKind::biot_savart:
            rep = biot_savart_bound(now, spec.point(), spec.p);
            break;
        case MonitorKind::oscillation:
            rep = oscillation_check(now, spec.sigma1, spec.scale, spec.z);
            break;
        case MonitorKind::lambda:
            rep = lambda_sup(trajectory, Region::parabolic(1.0, 4.0, spec.sigma1, spec.scale,
                                                           Measure::volume, spec.z));
            break;
        case MonitorKind::kbar: {
            const KbarValue k = kbar(trajectory, spec.sigma1, spec.scale, spec.z);
            rep.monitor = "kbar";
            rep.where = cylinder_c(9.0 * spec.sigma1 / 8.0, spec.scale, Measure::area, spec.z)
                            .describe();
            rep.time = now.t;
            rep.lhs = k.value;
            rep.rhs = 1.0;
            rep.implied_constant = k.value;
            rep.clipped = k.clipped;
            break;
        }
    }
    rep.m0 = trajectory.m0();
    return rep;
}

std::string monitor_csv_header() {
    return "time,monitor,point_or_region,lhs,rhs,implied_constant,clipped\n";
}

std::string monitor_csv_row(const BoundReport& r) {
    return num(r.time) + "," + r.monitor + "," + r.where + "," + num(r.lhs) + "," + num(r.rhs) +
           "," + num(r.implied_constant) + "," + (r.clipped ? "1" : "0") + "\n";
}

std::size_t write_monitor_rows(std::ostream& out, const std::vector<MonitorSpec>& specs,
                               const Trajectory& trajectory, std::vector<std::size_t>* counts) {
    std::size_t written = 0;
    for (std::size_t m = 0; m < specs.size(); ++m) {
        if (const auto rep = evaluate_monitor(specs[m], trajectory)) {
            out << monitor_csv_row(*rep);
            ++written;
            if (counts != nullptr) {
                ++(*counts)[m];
            }
        }
    }
    return written;
}

}  // namespace axiswirl
