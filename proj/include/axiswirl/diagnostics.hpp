#pragma once

#include <string>
#include <utility>
#include <vector>

#include "axiswirl/ball_quadrature.hpp"
#include "axiswirl/elliptic.hpp"
#include "axiswirl/field.hpp"
#include "axiswirl/trajectory.hpp"

namespace axiswirl {

/// Both sides of one monitored inequality with its constant set to 1.
struct BoundReport {
    std::string monitor;
    /// Evaluation point ("r=..;z=..") or region description.
    std::string where;
    double time = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    std::vector<std::pair<std::string, double>> rhs_terms;
    double implied_constant = 0.0;
    bool clipped = false;
    double m0 = 0.0;

    /// Named rhs term; throws std::out_of_range when absent.
    double term(const std::string& name) const;
};

/// lhs / rhs for rhs > 0; otherwise 0 when lhs = 0 and infinity when not.
double implied_constant(double lhs, double rhs);

/// "r=<r>;z=<z>" with round-trip precision.
std::string describe_point(double r, double z);

/**
 * Lambda = sup |v_theta| over a parabolic region ending at the newest
 * snapshot. rhs is M0 / (inner radius of the region) and implied_constant
 * is the maximum-principle ratio Lambda * r_inner / M0.
 */
BoundReport lambda_sup(const Trajectory& trajectory, const Region& region);

/// (||v|| + 1) sqrt(ln(||omega_theta|| + ||v|| + e)) on the area-measure
/// region, v with all three components.
double kbar_integrand(const FlowState& state, const Region& region);

struct KbarValue {
    double value = 0.0;
    bool clipped = false;
};

/// Supremum of kbar_integrand on C(9 sigma1 / 8) over snapshots in the
/// window [t - sigma1^2 scale^2, t] ending at the newest snapshot.
KbarValue kbar(const Trajectory& trajectory, double sigma1, double scale = 1.0,
               double z_center = 0.0);

/// sup over C(sigma1) of |r L_theta - a|, a the area average of r L_theta
/// over C(9 sigma1 / 8), against the kbar integrand on C(9 sigma1 / 8).
BoundReport oscillation_check(const FlowState& state, double sigma1, double scale = 1.0,
                              double z_center = 0.0);

/// |omega_theta(x)| against ln(1/r) r^{-7/2} [A]^2 [B] over the window
/// [t - r^2, t] ending at the newest snapshot, balls B(x, 4r).
BoundReport thm12_monitor(const Trajectory& trajectory, const Point& x,
                          const BallRuleSize& rule = {});

/// (|v_r| + |v_z|)(x) against sqrt|ln r| / r^2.
BoundReport thm11_monitor(const FlowState& state, const Point& x);

/// |L_theta(x)| against |ln r|^{1/2} / r^{1/2}.
BoundReport stream_monitor(const FlowState& state, const Point& x);

/// sup over the grid of r |v_z|.
double vz_criterion(const FlowState& state);
BoundReport vz_report(const FlowState& state);

BoundReport biot_savart_bound(const FlowState& state, const Point& x, double p = 2.0,
                              const BallRuleSize& rule = {});

}  // namespace axiswirl
