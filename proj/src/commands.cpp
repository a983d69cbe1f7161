#include "axiswirl/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "axiswirl/errors.hpp"
#include "axiswirl/evolution.hpp"
#include "axiswirl/manufactured.hpp"
#include "axiswirl/monitors.hpp"
#include "axiswirl/snapshot.hpp"

namespace axiswirl {

namespace fs = std::filesystem;

namespace {

std::string fmt_g(double v, int digits = 6) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

double max_divergence(const FlowState& s) {
    return divergence_cyl(s.v_r, s.v_z).max_abs();
}

FlowState initial_state(const RunConfig& cfg, const Grid& grid) {
    if (!cfg.initial_snapshot.empty()) {
        FlowState s = read_snapshot(cfg.initial_snapshot);
        if (!(s.grid() == grid)) {
            throw ConfigError("snapshot", "snapshot grid differs from [grid]");
        }
        return s;
    }
    const auto tags = manufactured_tags();
    if (std::find(tags.begin(), tags.end(), cfg.initial_family) != tags.end()) {
        return manufactured_state(manufactured(cfg.initial_family), grid, 0.0);
    }
    return decay_initial_state(cfg.initial_family, grid, cfg.amplitude);
}

}  // namespace

fs::path output_directory(const std::string& explicit_dir, const std::string& stem) {
    if (!explicit_dir.empty()) {
        return explicit_dir;
    }
    if (const char* root = std::getenv("AXISWIRL_OUTPUT"); root != nullptr && *root != '\0') {
        return fs::path(root) / stem;
    }
    return fs::path("axiswirl_out") / stem;
}

int cmd_run(const RunConfig& cfg, const fs::path& dir, std::ostream& log) {
    const Grid grid = cfg.grid.build();
    fs::create_directories(dir);
    const ManufacturedFamily* family = cfg.forcing.empty() ? nullptr : &manufactured(cfg.forcing);
    Stepper stepper(grid, family);
    FlowState state = stepper.prepare(initial_state(cfg, grid));

    std::ofstream csv(dir / "monitors.csv", std::ios::trunc);
    csv << monitor_csv_header();
    Trajectory trajectory(cfg.retention);
    std::size_t snap_index = 0;
    std::size_t steps = 0;

    auto record = [&](const FlowState& s) {
        write_snapshot(dir / snapshot_name(snap_index++), s);
        trajectory.append(s);
        write_monitor_rows(csv, cfg.monitors, trajectory);
        log << "t=" << fmt_g(s.t, 10) << " step=" << steps << " max|Gamma|=" << fmt_g(s.gamma.max_abs())
            << " energy=" << fmt_g(kinetic_energy(s)) << " max|div|=" << fmt_g(max_divergence(s))
            << "\n";
    };

    try {
        record(state);
        const double slack = 1e-12 * std::max(1.0, cfg.t_end);
        bool recorded = true;
        while (cfg.t_end - state.t > slack && (cfg.max_steps == 0 || steps < cfg.max_steps)) {
            const double dt =
                std::min(cfl_dt(state, cfg.cfl_advective, cfg.cfl_diffusive), cfg.t_end - state.t);
            state = stepper.step(state, dt);
            ++steps;
            recorded = false;
            if (steps % cfg.snapshot_stride == 0) {
                record(state);
                recorded = true;
            }
        }
        if (!recorded) {
            record(state);
        }
    } catch (const BlowUpError& e) {
        write_snapshot(dir / "failure_dump.axs", e.last_good());
        log << "blow-up: " << e.what() << " (last good state at t=" << fmt_g(e.last_good().t, 10)
            << " written to failure_dump.axs)\n";
        return kExitBlowUp;
    } catch (const EllipticSolveError& e) {
        write_snapshot(dir / "failure_dump.axs", state);
        log << "elliptic failure: " << e.what() << " (residual " << fmt_g(e.residual()) << ")\n";
        return kExitSolver;
    }
    log << "done: " << steps << " steps, " << snap_index << " snapshots in " << dir.string() << "\n";
    return kExitOk;
}

void cmd_monitor(const fs::path& dir, const std::string& spec, std::ostream& out) {
    std::vector<MonitorSpec> specs;
    std::istringstream in(spec);
    std::string line;
    double retention = 0.0;
    while (std::getline(in, line, ';')) {
        if (line.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        specs.push_back(parse_monitor(line));
        retention = std::max(retention, specs.back().look_back());
    }
    if (specs.empty()) {
        throw ConfigError("monitor", "no monitor given");
    }
    const std::vector<FlowState> states = read_snapshot_dir(dir);
    Trajectory trajectory(retention);
    std::vector<std::size_t> counts(specs.size(), 0);
    out << monitor_csv_header();
    for (const FlowState& s : states) {
        trajectory.append(s);
        write_monitor_rows(out, specs, trajectory, &counts);
    }
    for (std::size_t m = 0; m < specs.size(); ++m) {
        if (counts[m] == 0) {
            throw RetentionError("monitor '" + specs[m].text + "' needs snapshots spanning " +
                                 fmt_g(specs[m].look_back()) + " time units; the trajectory has " +
                                 std::to_string(states.size()) + " snapshot(s) spanning " +
                                 fmt_g(states.back().t - states.front().t));
        }
    }
}

std::vector<std::pair<std::size_t, std::size_t>> parse_grid_list(const std::string& text) {
    std::vector<std::pair<std::size_t, std::size_t>> grids;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        unsigned long a = 0;
        unsigned long b = 0;
        char x = 0;
        char extra = 0;
        if (std::sscanf(item.c_str(), " %lu %c %lu %c", &a, &x, &b, &extra) != 3 ||
            (x != 'x' && x != 'X')) {
            throw ConfigError("grids", "expected NRxNZ, got '" + item + "'");
        }
        grids.emplace_back(a, b);
    }
    if (grids.empty()) {
        throw ConfigError("grids", "no grid given");
    }
    return grids;
}

std::vector<ConvergenceRow> mms_verify(const std::string& tag,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& grids,
                                       const MmsOptions& o) {
    const ManufacturedFamily& family = manufactured(tag);
    std::vector<ConvergenceRow> rows;
    for (const auto& [n_r, n_z] : grids) {
        const Grid grid(o.r_min, o.r_max, o.z_min, o.z_max, n_r, n_z, o.z_periodic);
        Stepper stepper(grid, &family);
        ConvergenceRow row;
        row.n_r = n_r;
        row.n_z = n_z;
        row.h = std::sqrt(grid.h_r() * grid.h_z());
        FlowState s = stepper.prepare(manufactured_state(family, grid, 0.0));
        row.max_divergence = max_divergence(s);
        if (o.observer) {
            o.observer(s);
        }
        s = stepper.advance_to(s, o.t_end, o.cfl_advective, o.cfl_diffusive,
                               [&](const FlowState& st) {
                                   ++row.steps;
                                   row.max_divergence = std::max(row.max_divergence, max_divergence(st));
                                   if (o.observer) {
                                       o.observer(st);
                                   }
                               });
        const FlowState exact = manufactured_state(family, grid, s.t);
        row.error_gamma = (s.gamma - exact.gamma).max_abs();
        row.error_omega = (s.omega - exact.omega).max_abs();
        if (!rows.empty()) {
            const ConvergenceRow& prev = rows.back();
            const double ratio = std::log(prev.h / row.h);
            row.order_gamma = std::log(prev.error_gamma / row.error_gamma) / ratio;
            row.order_omega = std::log(prev.error_omega / row.error_omega) / ratio;
        }
        rows.push_back(row);
    }
    return rows;
}

void write_convergence_table(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
    out << "n_r,n_z,h,steps,error_gamma,error_omega,order_gamma,order_omega,max_divergence\n";
    for (const ConvergenceRow& r : rows) {
        out << r.n_r << "," << r.n_z << "," << fmt_g(r.h, 17) << "," << r.steps << ","
            << fmt_g(r.error_gamma, 17) << "," << fmt_g(r.error_omega, 17) << ","
            << fmt_g(r.order_gamma, 6) << "," << fmt_g(r.order_omega, 6) << ","
            << fmt_g(r.max_divergence, 6) << "\n";
    }
}

std::vector<ScalingIdentity> scale_check(const fs::path& dir, double k) {
    Trajectory trajectory;
    for (FlowState& s : read_snapshot_dir(dir)) {
        trajectory.append(std::move(s));
    }
    return scaling_check(trajectory, k);
}

void write_scaling_table(std::ostream& out, const std::vector<ScalingIdentity>& rows) {
    out << "identity,expected,measured,relative_error\n";
    for (const ScalingIdentity& r : rows) {
        out << r.name << "," << fmt_g(r.expected, 17) << "," << fmt_g(r.measured, 17) << ","
            << fmt_g(r.relative_error, 6) << "\n";
    }
}

}  // namespace axiswirl
