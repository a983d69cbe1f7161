#pragma once

#include <cstddef>
#include <memory>
#include <utility>

#include "axiswirl/ball_quadrature.hpp"
#include "axiswirl/field.hpp"

namespace axiswirl {

struct EllipticSolveReport {
    std::size_t iterations = 0;
    /// Root-mean-square residual of the five-point equations.
    double residual_norm = 0.0;
    double tolerance = 0.0;
};

struct StreamSolution {
    ScalarField stream;
    EllipticSolveReport report;
};

/**
 * Solver for (D_rr + (1/r) D_r + D_zz - 1/r^2) L = -omega_theta on the
 * interior nodes, with Dirichlet values on every non-periodic boundary.
 *
 * Scaled by -r the five-point operator is symmetric positive definite; the
 * solver factors it once per grid (sparse LDL^T) and polishes each solve by
 * iterative refinement until the residual meets the tolerance.
 *
 * A solver instance owns its factorization and workspace: use one instance
 * per thread.
 */
class StreamSolver {
public:
    explicit StreamSolver(const Grid& grid, double relative_tolerance = 1e-10,
                          std::size_t max_iterations = 4);
    ~StreamSolver();
    StreamSolver(StreamSolver&&) noexcept;
    StreamSolver& operator=(StreamSolver&&) noexcept;

    const Grid& grid() const { return grid_; }

    /// boundary supplies the Dirichlet values (its interior values are
    /// ignored). Throws EllipticSolveError when the iteration cap is hit.
    StreamSolution solve(const ScalarField& omega_theta, const ScalarField& boundary);

    /// Residual field of the five-point equations (zero on boundary nodes).
    ScalarField residual(const ScalarField& stream, const ScalarField& omega_theta) const;

private:
    struct Impl;
    Grid grid_;
    double relative_tolerance_;
    std::size_t max_iterations_;
    std::unique_ptr<Impl> impl_;
};

/// One-shot convenience wrapper around StreamSolver.
StreamSolution solve_stream(const ScalarField& omega_theta, const ScalarField& boundary);

/// v_r = -D_z L, v_z = (1/r) D_r(r L).
std::pair<ScalarField, ScalarField> velocity_from_stream(const ScalarField& stream);

/**
 * sup over interior nodes of | |grad(r L)|^2 - r^2 (v_r^2 + v_z^2) |.
 *
 * The gradient of r L is formed by the product rule, (L + r D_r L, r D_z L),
 * independently of the conservative difference used for v_z, so the
 * discrepancy measures the O(h^2) gap between the two discretizations.
 */
double stream_gradient_identity(const ScalarField& stream, const ScalarField& v_r,
                                const ScalarField& v_z);

struct BiotSavartReport {
    double r = 0.0;
    double r0 = 0.0;
    double p = 2.0;
    /// sup over B(x, r0) of |b|.
    double lhs_sup_b = 0.0;
    /// r0^{-3/p} ||b||_{L^p(B(x, 2 r0))}.
    double term_lp = 0.0;
    /// r0 sup over B(x, 2 r0) of |omega_theta|.
    double term_vort = 0.0;
    double implied_constant = 0.0;
    /// ceil(r / (2 r0)): disjoint rotated copies of B(x, r0) around the axis.
    std::size_t n_balls = 0;
    /// ||b||^2_{L^2(B(x, 2 r0))}.
    double ball_energy = 0.0;
    /// ball_energy over ||b||^2_{L^2} on the whole grid (volume measure).
    double ring_energy_ratio = 0.0;
    /// r^{1/2} |ln r|^{-1/2}, the factor the ring ratio is compared against.
    double ring_factor = 0.0;
    bool clipped = false;
};

/// r0 = r^{3/2} |ln r|^{-1/2} with r measured in units of unit_length.
double biot_savart_radius(double r, double unit_length = 1.0);

/**
 * Both sides of the local estimate
 *   sup_{B(x,r0)} |b| <= C r0^{-3/p} ||b||_{L^p(B(x,2r0))} + C r0 sup_{B(x,2r0)} |omega_theta|
 * at the radius r0 = r^{3/2} |ln r|^{-1/2}, r = |x'| in (0, 1/2].
 *
 * Balls are integrated with the product rule of ball_rule; when a ball
 * leaves the grid the dropped samples set clipped and the constants are
 * lower bounds.
 */
BiotSavartReport biot_savart_report(const FlowState& state, const Point& x, double p = 2.0,
                                    const BallRuleSize& rule = {});

}  // namespace axiswirl
