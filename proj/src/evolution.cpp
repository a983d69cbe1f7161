#include "axiswirl/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace axiswirl {

namespace {

void add_sampled(ScalarField& f, const SpaceTimeFunction& g, double t) {
    const Grid& grid = f.grid();
    for (std::size_t i = 0; i < grid.n_r(); ++i) {
        for (std::size_t j = 0; j < grid.n_z(); ++j) {
            f(i, j) += g(grid.r(i), grid.z(j), t);
        }
    }
}

void require_derived(const FlowState& state) {
    if (!state.derived_fresh) {
        throw std::invalid_argument("derived fields are stale; prepare the state first");
    }
}

}  // namespace

ScalarField rhs_gamma(const FlowState& state) {
    require_derived(state);
    const Grid& g = state.grid();
    const ScalarField dr = ddr(state.gamma);
    const ScalarField dz = ddz(state.gamma);
    const ScalarField drr = d2dr2(state.gamma);
    const ScalarField dzz = d2dz2(state.gamma);
    ScalarField out(g, "rhs Gamma");
    for (std::size_t i = 0; i < g.n_r(); ++i) {
        const double inv_r = 1.0 / g.r(i);
        for (std::size_t j = 0; j < g.n_z(); ++j) {
            out(i, j) = drr(i, j) - inv_r * dr(i, j) + dzz(i, j) -
                        state.v_r(i, j) * dr(i, j) - state.v_z(i, j) * dz(i, j);
        }
    }
    return out;
}

ScalarField rhs_omega(const FlowState& state) {
    require_derived(state);
    const Grid& g = state.grid();
    const ScalarField dr = ddr(state.omega);
    const ScalarField dz = ddz(state.omega);
    const ScalarField drr = d2dr2(state.omega);
    const ScalarField dzz = d2dz2(state.omega);
    const ScalarField source = ddz(hadamard(state.gamma, state.gamma));
    ScalarField out(g, "rhs Omega");
    for (std::size_t i = 0; i < g.n_r(); ++i) {
        const double r = g.r(i);
        const double inv_r = 1.0 / r;
        const double inv_r4 = inv_r * inv_r * inv_r * inv_r;
        for (std::size_t j = 0; j < g.n_z(); ++j) {
            out(i, j) = drr(i, j) + 3.0 * inv_r * dr(i, j) + dzz(i, j) -
                        state.v_r(i, j) * dr(i, j) - state.v_z(i, j) * dz(i, j) +
                        inv_r4 * source(i, j);
        }
    }
    return out;
}

double cfl_dt(const FlowState& state, double cfl_advective, double cfl_diffusive) {
    if (!(cfl_advective > 0.0 && cfl_advective < 1.0) ||
        !(cfl_diffusive > 0.0 && cfl_diffusive < 1.0)) {
        throw std::invalid_argument("CFL factors must lie in (0, 1)");
    }
    const double h = state.grid().h_min();
    const double speed = std::max({state.v_r.max_abs(), state.v_z.max_abs(), 1e-300});
    return std::min(cfl_advective * h / speed, cfl_diffusive * h * h / 4.0);
}

double kinetic_energy(const FlowState& state) {
    const RegionMask mask = grid_mask(state.grid(), Measure::volume);
    const std::vector<const ScalarField*> v{&state.v_r, &state.v_theta, &state.v_z};
    const double n = vector_norm(v, mask);
    return n * n;
}

bool is_boundary_node(const Grid& grid, std::size_t i, std::size_t j) {
    if (i == 0 || i + 1 == grid.n_r()) {
        return true;
    }
    return !grid.z_periodic() && (j == 0 || j + 1 == grid.n_z());
}

Stepper::Stepper(const Grid& grid, const ManufacturedFamily* family)
    : grid_(grid), family_(family), solver_(grid) {}

void Stepper::impose_boundary(FlowState& state) const {
    for (std::size_t i = 0; i < grid_.n_r(); ++i) {
        for (std::size_t j = 0; j < grid_.n_z(); ++j) {
            if (!is_boundary_node(grid_, i, j)) {
                continue;
            }
            if (family_ != nullptr) {
                state.gamma(i, j) = family_->gamma(grid_.r(i), grid_.z(j), state.t);
                state.omega(i, j) = family_->omega(grid_.r(i), grid_.z(j), state.t);
            } else {
                state.gamma(i, j) = held_->gamma(i, j);
                state.omega(i, j) = held_->omega(i, j);
            }
        }
    }
}

void Stepper::derive(FlowState& state) {
    state.omega_theta = times_r_power(state.omega, 1);
    state.omega_theta.rename("omega_theta");
    ScalarField boundary(grid_, "L_theta boundary");
    if (family_ != nullptr) {
        for (std::size_t i = 0; i < grid_.n_r(); ++i) {
            for (std::size_t j = 0; j < grid_.n_z(); ++j) {
                if (is_boundary_node(grid_, i, j)) {
                    boundary(i, j) = family_->stream(grid_.r(i), grid_.z(j), state.t);
                }
            }
        }
    }
    StreamSolution sol = solver_.solve(state.omega_theta, boundary);
    last_solve_ = sol.report;
    state.stream = std::move(sol.stream);
    auto [v_r, v_z] = velocity_from_stream(state.stream);
    state.v_r = std::move(v_r);
    state.v_z = std::move(v_z);
    state.v_theta = times_r_power(state.gamma, -1);
    state.v_theta.rename("v_theta");
    state.derived_fresh = true;
}

FlowState Stepper::prepare(FlowState state) {
    if (!(state.grid() == grid_)) {
        throw std::invalid_argument("state does not live on the stepper grid");
    }
    if (family_ == nullptr) {
        held_ = state;
    }
    impose_boundary(state);
    derive(state);
    return state;
}

// Forward Euler substep from a prepared state.
FlowState Stepper::stage(const FlowState& from, double dt) {
    ScalarField dg = rhs_gamma(from);
    ScalarField dw = rhs_omega(from);
    if (family_ != nullptr) {
        add_sampled(dg, family_->forcing_gamma, from.t);
        add_sampled(dw, family_->forcing_omega, from.t);
    }
    FlowState next = from;
    next.t = from.t + dt;
    next.derived_fresh = false;
    next.gamma += dt * dg;
    next.omega += dt * dw;
    return next;
}

FlowState Stepper::step(const FlowState& state, double dt) {
    require_derived(state);
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("time step must be positive");
    }
    auto check = [&](const FlowState& s) {
        for (const ScalarField* f : s.fields()) {
            if (!f->all_finite()) {
                throw BlowUpError("non-finite " + f->name() + " at t = " + std::to_string(s.t),
                                  state);
            }
        }
    };

    FlowState one = stage(state, dt);
    impose_boundary(one);
    check(one);
    derive(one);
    check(one);

    FlowState two = stage(one, dt);
    FlowState next = state;
    next.t = one.t;
    next.gamma = 0.5 * (state.gamma + two.gamma);
    next.omega = 0.5 * (state.omega + two.omega);
    next.gamma.rename("Gamma");
    next.omega.rename("Omega");
    impose_boundary(next);
    check(next);
    derive(next);
    check(next);
    return next;
}

FlowState Stepper::advance_to(FlowState state, double t_target, double cfl_advective,
                              double cfl_diffusive,
                              const std::function<void(const FlowState&)>& on_step) {
    require_derived(state);
    const double slack = 1e-12 * std::max(1.0, std::abs(t_target));
    while (t_target - state.t > slack) {
        const double dt = std::min(cfl_dt(state, cfl_advective, cfl_diffusive), t_target - state.t);
        state = step(state, dt);
        if (on_step) {
            on_step(state);
        }
    }
    return state;
}

}  // namespace axiswirl
