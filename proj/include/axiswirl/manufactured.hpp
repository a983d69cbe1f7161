#pragma once

#include <functional>
#include <string>
#include <vector>

#include "axiswirl/field.hpp"

namespace axiswirl {

using SpaceTimeFunction = std::function<double(double r, double z, double t)>;

/// Closed-form solution of the forced system together with its forcing.
///
/// The forced equations read d_t Gamma = rhs_gamma + forcing_gamma and
/// d_t Omega = rhs_omega + forcing_omega, with the velocity closed through
/// the stream function as in an unforced run.
struct ManufacturedFamily {
    std::string tag;
    SpaceTimeFunction gamma;
    SpaceTimeFunction omega;
    SpaceTimeFunction stream;
    SpaceTimeFunction v_r;
    SpaceTimeFunction v_z;
    SpaceTimeFunction forcing_gamma;
    SpaceTimeFunction forcing_omega;
};

/// Registered family by tag: "coupled", "swirl-free-stream", "rigid-swirl".
/// Throws std::invalid_argument for an unknown tag.
const ManufacturedFamily& manufactured(const std::string& tag);
std::vector<std::string> manufactured_tags();

/// Every field of the family sampled on grid at time t (derived fields from
/// their closed forms).
FlowState manufactured_state(const ManufacturedFamily& family, const Grid& grid, double t);

/// Unforced initial data. Only the prognostic pair is filled in.
///
/// gaussian-swirl: Gamma = a r^2 exp(-z^2) sin^2(pi (r - r_min)/(r_max - r_min)), Omega = 0.
/// zero-swirl:     Gamma = 0, Omega = a exp(-z^2) sin^2(pi (r - r_min)/(r_max - r_min)).
FlowState decay_initial_state(const std::string& name, const Grid& grid, double amplitude = 1.0);
std::vector<std::string> decay_initial_names();

}  // namespace axiswirl
