#pragma once

#include <functional>
#include <optional>

#include "axiswirl/elliptic.hpp"
#include "axiswirl/errors.hpp"
#include "axiswirl/field.hpp"
#include "axiswirl/manufactured.hpp"

namespace axiswirl {

/// A stage produced a non-finite value. last_good() is the state the
/// failing step started from.
class BlowUpError : public Error {
public:
    BlowUpError(const std::string& what, FlowState last_good)
        : Error(what), last_good_(std::move(last_good)) {}
    const FlowState& last_good() const { return last_good_; }

private:
    FlowState last_good_;
};

/// d_t Gamma without forcing: D_rr G + (1/r) D_r G + D_zz G - v_r D_r G - v_z D_z G - (2/r) D_r G.
ScalarField rhs_gamma(const FlowState& state);

/// d_t Omega without forcing: Lap Omega - b.grad Omega + (2/r) D_r Omega + (1/r^4) D_z(Gamma^2).
ScalarField rhs_omega(const FlowState& state);

/// min(cfl_advective h / max(|v_r|, |v_z|, eps), cfl_diffusive h^2 / 4), h = min(h_r, h_z).
double cfl_dt(const FlowState& state, double cfl_advective = 0.4, double cfl_diffusive = 0.5);

/// ||(v_r, v_theta, v_z)||^2 over the whole grid, volume measure.
double kinetic_energy(const FlowState& state);

/// True for nodes whose values are prescribed (r ends, and z ends when bounded).
bool is_boundary_node(const Grid& grid, std::size_t i, std::size_t j);

/**
 * Two-stage SSP Runge-Kutta integrator for the (Gamma, Omega) system.
 *
 * With a manufactured family the forcing is added and every boundary value
 * (Gamma, Omega and the Dirichlet data of L_theta) comes from the closed
 * form at the stage time. Without one, Gamma and Omega keep the boundary
 * values of the prepared initial state and L_theta vanishes on the boundary.
 */
class Stepper {
public:
    explicit Stepper(const Grid& grid, const ManufacturedFamily* family = nullptr);

    /// Imposes boundary values and fills every derived field.
    FlowState prepare(FlowState state);

    /// One step of length dt from a prepared state.
    FlowState step(const FlowState& state, double dt);

    /// Steps with dt = cfl_dt (shortened to land on t_target) until t_target.
    /// on_step sees every accepted state.
    FlowState advance_to(FlowState state, double t_target, double cfl_advective,
                         double cfl_diffusive,
                         const std::function<void(const FlowState&)>& on_step = {});

    const Grid& grid() const { return grid_; }
    const EllipticSolveReport& last_solve() const { return last_solve_; }

private:
    void impose_boundary(FlowState& state) const;
    void derive(FlowState& state);
    FlowState stage(const FlowState& from, double dt);

    Grid grid_;
    const ManufacturedFamily* family_;
    StreamSolver solver_;
    std::optional<FlowState> held_;
    EllipticSolveReport last_solve_;
};

}  // namespace axiswirl
