#include "axiswirl/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace axiswirl {

namespace {

ScalarField scaled(const ScalarField& f, const Grid& grid, double c) {
    std::vector<double> values(f.values().begin(), f.values().end());
    for (double& v : values) {
        v *= c;
    }
    return ScalarField(grid, std::move(values), f.name());
}

double spatial_sq(const FlowState& s, const std::function<std::vector<ScalarField>(const FlowState&)>& parts) {
    const RegionMask mask = grid_mask(s.grid(), Measure::volume);
    const std::vector<ScalarField> fields = parts(s);
    std::vector<const ScalarField*> ptrs;
    for (const ScalarField& f : fields) {
        ptrs.push_back(&f);
    }
    const double n = vector_norm(ptrs, mask);
    return n * n;
}

std::vector<ScalarField> velocity(const FlowState& s) { return {s.v_r, s.v_theta, s.v_z}; }
std::vector<ScalarField> meridional(const FlowState& s) { return {s.v_r, s.v_z}; }
std::vector<ScalarField> vorticity(const FlowState& s) {
    return {curl_r(s.v_theta), s.omega_theta, curl_z(s.v_theta)};
}

double spacetime_norm(const Trajectory& tr,
                      const std::function<std::vector<ScalarField>(const FlowState&)>& parts) {
    double total = 0.0;
    double prev = spatial_sq(tr[0], parts);
    for (std::size_t n = 1; n < tr.size(); ++n) {
        const double cur = spatial_sq(tr[n], parts);
        total += 0.5 * (tr[n].t - tr[n - 1].t) * (prev + cur);
        prev = cur;
    }
    return std::sqrt(total);
}

double linf_l2(const Trajectory& tr,
               const std::function<std::vector<ScalarField>(const FlowState&)>& parts) {
    double best = 0.0;
    for (const FlowState& s : tr.snapshots()) {
        best = std::max(best, spatial_sq(s, parts));
    }
    return std::sqrt(best);
}

ScalingIdentity ratio_identity(const std::string& name, double expected, double rescaled,
                               double original) {
    ScalingIdentity id{name, expected, 0.0, 0.0};
    if (original == 0.0) {
        id.measured = rescaled == 0.0 ? expected : std::numeric_limits<double>::infinity();
    } else {
        id.measured = rescaled / original;
    }
    id.relative_error = std::abs(id.measured - expected) / expected;
    return id;
}

ScalingIdentity pointwise_identity(const std::string& name, double factor, const Trajectory& a,
                                   const Trajectory& b,
                                   const std::function<ScalarField(const FlowState&)>& get) {
    double diff = 0.0;
    double scale = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) {
        const ScalarField fa = get(a[n]);
        const ScalarField fb = get(b[n]);
        const auto x = fa.values();
        const auto y = fb.values();
        for (std::size_t m = 0; m < x.size(); ++m) {
            diff = std::max(diff, std::abs(y[m] - factor * x[m]));
            scale = std::max(scale, std::abs(factor * x[m]));
        }
    }
    return {name, factor, factor, scale > 0.0 ? diff / scale : diff};
}

}  // namespace

bool is_nested_factor(double k) {
    if (!(k > 0.0) || !std::isfinite(k)) {
        return false;
    }
    int exponent = 0;
    return std::frexp(k, &exponent) == 0.5;
}

FlowState rescale(const FlowState& state, double k) {
    if (!is_nested_factor(k)) {
        throw std::invalid_argument("rescaling factor must be a power of two on nested grids");
    }
    const Grid g = state.grid().dilated(1.0 / k);
    return FlowState{state.t / (k * k),
                     scaled(state.gamma, g, 1.0),
                     scaled(state.omega, g, k * k * k),
                     scaled(state.stream, g, 1.0),
                     scaled(state.v_r, g, k),
                     scaled(state.v_theta, g, k),
                     scaled(state.v_z, g, k),
                     scaled(state.omega_theta, g, k * k),
                     state.derived_fresh};
}

Trajectory rescale(const Trajectory& trajectory, double k) {
    if (!is_nested_factor(k)) {
        throw std::invalid_argument("rescaling factor must be a power of two on nested grids");
    }
    Trajectory out(trajectory.retention() / (k * k));
    for (const FlowState& s : trajectory.snapshots()) {
        out.append(rescale(s, k));
    }
    out.set_m0(trajectory.m0());
    return out;
}

std::vector<ScalingIdentity> scaling_check(const Trajectory& trajectory, double k) {
    if (trajectory.empty()) {
        throw std::invalid_argument("scaling check needs at least one snapshot");
    }
    const Trajectory tilde = rescale(trajectory, k);
    std::vector<ScalingIdentity> out;
    if (trajectory.size() >= 2) {
        out.push_back(ratio_identity("v_l2_spacetime", std::pow(k, -1.5),
                                     spacetime_norm(tilde, velocity),
                                     spacetime_norm(trajectory, velocity)));
    }
    out.push_back(ratio_identity("b_linf_l2", std::pow(k, -0.5), linf_l2(tilde, meridional),
                                 linf_l2(trajectory, meridional)));
    if (trajectory.size() >= 2) {
        out.push_back(ratio_identity("omega_l2_spacetime", std::pow(k, -0.5),
                                     spacetime_norm(tilde, vorticity),
                                     spacetime_norm(trajectory, vorticity)));
    }
    // Gamma and Omega are rebuilt from the rescaled velocity and vorticity,
    // not copied, so the identities exercise the relations r v_theta and
    // omega_theta / r on the dilated grid.
    out.push_back(pointwise_identity("gamma", 1.0, trajectory, tilde, [](const FlowState& s) {
        return times_r_power(s.v_theta, 1);
    }));
    out.push_back(pointwise_identity("omega_reduced", k * k * k, trajectory, tilde,
                                     [](const FlowState& s) {
                                         return times_r_power(s.omega_theta, -1);
                                     }));
    out.push_back(pointwise_identity("stream", 1.0, trajectory, tilde,
                                     [](const FlowState& s) { return s.stream; }));
    return out;
}

}  // namespace axiswirl
