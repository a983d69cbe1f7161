#include "axiswirl/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "axiswirl/errors.hpp"

namespace axiswirl {

namespace {

// Radius in units of the grid's unit length; monitors at points need it in (0, 1/2].
double reduced_radius(const Grid& grid, const Point& x, const char* monitor) {
    const double s = x.radius() / grid.unit_length();
    if (!(s > 0.0) || s > 0.5) {
        throw std::invalid_argument(std::string(monitor) + " needs 0 < |x'| <= 1/2");
    }
    return s;
}

double at(const ScalarField& f, const Point& x, bool& clipped) {
    const auto v = interpolate(f, x.radius(), x.z());
    if (!v) {
        clipped = true;
        return 0.0;
    }
    return *v;
}

double meridional_ball_energy(const FlowState& s, const std::vector<BallSample>& rule,
                              bool& clipped) {
    const BallEvaluation e = evaluate_on_ball(rule, {&s.v_r, &s.v_z});
    clipped = clipped || e.clipped;
    return ball_energy(e);
}

double vorticity_ball_energy(const FlowState& s, const std::vector<BallSample>& rule,
                             bool& clipped) {
    const BallEvaluation e = evaluate_on_ball(rule, {&s.omega_theta});
    clipped = clipped || e.clipped;
    return ball_energy(e);
}

}  // namespace

double BoundReport::term(const std::string& name) const {
    for (const auto& [key, value] : rhs_terms) {
        if (key == name) {
            return value;
        }
    }
    throw std::out_of_range("report '" + monitor + "' has no term '" + name + "'");
}

double implied_constant(double lhs, double rhs) {
    if (rhs > 0.0) {
        return lhs / rhs;
    }
    return lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

std::string describe_point(double r, double z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "r=%.17g;z=%.17g", r, z);
    return buf;
}

BoundReport lambda_sup(const Trajectory& trajectory, const Region& region) {
    if (region.kind != Region::Kind::parabolic) {
        throw std::invalid_argument("lambda_sup needs a parabolic region");
    }
    if (trajectory.empty()) {
        throw RetentionError("empty trajectory");
    }
    const double t = trajectory.back().t;
    const RegionMask mask = region_mask(trajectory.back().grid(), region);
    BoundReport rep;
    rep.monitor = "lambda";
    rep.where = region.describe();
    rep.time = t;
    rep.m0 = trajectory.m0();
    rep.clipped = mask.clipped;
    rep.lhs = trajectory.sup(t, region.time_window(), [&](const FlowState& s) {
        return norm(s.v_theta, mask, std::numeric_limits<double>::infinity());
    });
    rep.rhs = rep.m0 / region.inner_radius();
    rep.rhs_terms = {{"m0", rep.m0}, {"inner_radius", region.inner_radius()}};
    rep.implied_constant = implied_constant(rep.lhs, rep.rhs);
    return rep;
}

double kbar_integrand(const FlowState& state, const Region& region) {
    const RegionMask mask = region_mask(state.grid(), region);
    const std::vector<const ScalarField*> v{&state.v_r, &state.v_theta, &state.v_z};
    const double nv = vector_norm(v, mask);
    const double nw = norm(state.omega_theta, mask, 2.0);
    return (nv + 1.0) * std::sqrt(std::log(nw + nv + std::numbers::e));
}

KbarValue kbar(const Trajectory& trajectory, double sigma1, double scale, double z_center) {
    if (trajectory.empty()) {
        throw RetentionError("empty trajectory");
    }
    const Region region = cylinder_c(9.0 * sigma1 / 8.0, scale, Measure::area, z_center);
    const double window = sigma1 * sigma1 * scale * scale;
    KbarValue out;
    out.clipped = region_mask(trajectory.back().grid(), region).clipped;
    out.value = trajectory.sup(trajectory.back().t, window,
                               [&](const FlowState& s) { return kbar_integrand(s, region); });
    return out;
}

BoundReport oscillation_check(const FlowState& state, double sigma1, double scale,
                              double z_center) {
    const Region inner = cylinder_c(sigma1, scale, Measure::area, z_center);
    const Region outer = cylinder_c(9.0 * sigma1 / 8.0, scale, Measure::area, z_center);
    const Grid& g = state.grid();
    const RegionMask inner_mask = region_mask(g, inner);
    const RegionMask outer_mask = region_mask(g, outer);
    const ScalarField rl = times_r_power(state.stream, 1);

    double sum = 0.0;
    for (std::size_t k = 0; k < outer_mask.size(); ++k) {
        sum += outer_mask.weights[k] * rl[outer_mask.nodes[k]];
    }
    const double average = sum / outer_mask.total_weight();
    double lhs = 0.0;
    for (std::size_t n : inner_mask.nodes) {
        lhs = std::max(lhs, std::abs(rl[n] - average));
    }

    const std::vector<const ScalarField*> v{&state.v_r, &state.v_theta, &state.v_z};
    const double nv = vector_norm(v, outer_mask);
    const double nw = norm(state.omega_theta, outer_mask, 2.0);

    BoundReport rep;
    rep.monitor = "oscillation";
    rep.where = inner.describe();
    rep.time = state.t;
    rep.lhs = lhs;
    rep.rhs = (nv + 1.0) * std::sqrt(std::log(nw + nv + std::numbers::e));
    rep.rhs_terms = {{"v_l2", nv}, {"omega_theta_l2", nw}, {"average", average}};
    rep.implied_constant = implied_constant(rep.lhs, rep.rhs);
    rep.clipped = inner_mask.clipped || outer_mask.clipped;
    return rep;
}

BoundReport thm12_monitor(const Trajectory& trajectory, const Point& x, const BallRuleSize& rule) {
    if (trajectory.empty()) {
        throw RetentionError("empty trajectory");
    }
    const FlowState& now = trajectory.back();
    const double s = reduced_radius(now.grid(), x, "thm12");
    const double r = x.radius();
    const double window = r * r;
    trajectory.require_window(now.t, window);

    BoundReport rep;
    rep.monitor = "thm12";
    rep.where = describe_point(r, x.z());
    rep.time = now.t;
    rep.m0 = trajectory.m0();
    rep.lhs = std::abs(at(now.omega_theta, x, rep.clipped));

    const auto ball = ball_rule(x, 4.0 * r, rule);
    bool clipped = false;
    const double sup_energy = trajectory.sup(now.t, window, [&](const FlowState& f) {
        return std::sqrt(meridional_ball_energy(f, ball, clipped));
    });
    const double vort = std::sqrt(trajectory.integrate(
        now.t, window, [&](const FlowState& f) { return vorticity_ball_energy(f, ball, clipped); }));
    const double floor_term = std::sqrt(r) * (rep.m0 + 1.0);
    const double first = sup_energy + floor_term;
    const double second = vort + floor_term;
    const double log_factor = std::log(1.0 / s);

    rep.rhs = log_factor * std::pow(r, -3.5) * first * first * second;
    rep.rhs_terms = {{"log", log_factor},
                     {"sup_b_l2", sup_energy},
                     {"omega_theta_l2", vort},
                     {"floor", floor_term}};
    rep.implied_constant = implied_constant(rep.lhs, rep.rhs);
    rep.clipped = rep.clipped || clipped;
    return rep;
}

BoundReport thm11_monitor(const FlowState& state, const Point& x) {
    const double s = reduced_radius(state.grid(), x, "thm11");
    const double r = x.radius();
    BoundReport rep;
    rep.monitor = "thm11";
    rep.where = describe_point(r, x.z());
    rep.time = state.t;
    rep.lhs = std::abs(at(state.v_r, x, rep.clipped)) + std::abs(at(state.v_z, x, rep.clipped));
    rep.rhs = std::sqrt(std::abs(std::log(s))) / (r * r);
    rep.rhs_terms = {{"log", std::abs(std::log(s))}};
    rep.implied_constant = implied_constant(rep.lhs, rep.rhs);
    return rep;
}

BoundReport stream_monitor(const FlowState& state, const Point& x) {
    const double s = reduced_radius(state.grid(), x, "stream");
    const double r = x.radius();
    BoundReport rep;
    rep.monitor = "stream";
    rep.where = describe_point(r, x.z());
    rep.time = state.t;
    rep.lhs = std::abs(at(state.stream, x, rep.clipped));
    rep.rhs = std::sqrt(std::abs(std::log(s))) / std::sqrt(r);
    rep.rhs_terms = {{"log", std::abs(std::log(s))}};
    rep.implied_constant = implied_constant(rep.lhs, rep.rhs);
    return rep;
}

double vz_criterion(const FlowState& state) {
    const Grid& g = state.grid();
    double best = 0.0;
    for (std::size_t i = 0; i < g.n_r(); ++i) {
        for (std::size_t j = 0; j < g.n_z(); ++j) {
            best = std::max(best, g.r(i) * std::abs(state.v_z(i, j)));
        }
    }
    return best;
}

BoundReport vz_report(const FlowState& state) {
    BoundReport rep;
    rep.monitor = "vz";
    rep.where = "grid";
    rep.time = state.t;
    rep.lhs = vz_criterion(state);
    rep.rhs = 1.0;
    rep.implied_constant = rep.lhs;
    return rep;
}

BoundReport biot_savart_bound(const FlowState& state, const Point& x, double p,
                              const BallRuleSize& rule) {
    const BiotSavartReport bs = biot_savart_report(state, x, p, rule);
    BoundReport rep;
    rep.monitor = "biot_savart";
    rep.where = describe_point(x.radius(), x.z());
    rep.time = state.t;
    rep.lhs = bs.lhs_sup_b;
    rep.rhs = bs.term_lp + bs.term_vort;
    rep.rhs_terms = {{"r0", bs.r0},
                     {"term_lp", bs.term_lp},
                     {"term_vort", bs.term_vort},
                     {"ring_energy_ratio", bs.ring_energy_ratio},
                     {"ring_factor", bs.ring_factor}};
    rep.implied_constant = bs.implied_constant;
    rep.clipped = bs.clipped;
    return rep;
}

}  // namespace axiswirl
