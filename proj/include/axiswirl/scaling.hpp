#pragma once

#include <string>
#include <vector>

#include "axiswirl/field.hpp"
#include "axiswirl/trajectory.hpp"

namespace axiswirl {

/// True when k is an integer power of two, the factors for which the
/// dilated grid reproduces every node coordinate and spacing exactly.
bool is_nested_factor(double k);

/**
 * The rescaled solution v~(x, t) = k v(k x, k^2 t) sampled on the grid
 * dilated by 1/k at time t / k^2:
 * v~ = k v, omega_theta~ = k^2 omega_theta, Gamma~ = Gamma, Omega~ = k^3 Omega,
 * L_theta~ = L_theta. Throws std::invalid_argument unless is_nested_factor(k).
 */
FlowState rescale(const FlowState& state, double k);
Trajectory rescale(const Trajectory& trajectory, double k);

struct ScalingIdentity {
    std::string name;
    double expected = 0.0;
    double measured = 0.0;
    double relative_error = 0.0;
};

/**
 * Rescales the trajectory by k and compares norms of the rescaled fields
 * against the originals:
 *   v_l2_spacetime      ||v~||_{L2}             / ||v||_{L2}             = k^{-3/2}
 *   b_linf_l2           ||b~||_{Linf_t L2_x}    / ||b||_{Linf_t L2_x}    = k^{-1/2}
 *   omega_l2_spacetime  ||omega~||_{L2}         / ||omega||_{L2}         = k^{-1/2}
 *   gamma / omega_reduced / stream: max |f~ - c f| / max |c f| with c = 1, k^3, 1.
 * Space-time norms use the whole grid (volume measure) and the trapezoid rule
 * over all snapshots; they are reported only for two or more snapshots.
 */
std::vector<ScalingIdentity> scaling_check(const Trajectory& trajectory, double k);

}  // namespace axiswirl
