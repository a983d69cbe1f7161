#include "axiswirl/manufactured.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace axiswirl {

namespace {

const std::map<std::string, ManufacturedFamily>& registry() {
    static const std::map<std::string, ManufacturedFamily> families = [] {
        std::map<std::string, ManufacturedFamily> m;

        // L = r sin z e^{-t}: v_r = -r cos z e^{-t}, v_z = 2 sin z e^{-t},
        // omega_theta = r sin z e^{-t}, so Omega = sin z e^{-t}.
        auto stream = [](double r, double z, double t) { return r * std::sin(z) * std::exp(-t); };
        auto v_r = [](double r, double z, double t) { return -r * std::cos(z) * std::exp(-t); };
        auto v_z = [](double, double z, double t) { return 2.0 * std::sin(z) * std::exp(-t); };
        auto omega = [](double, double z, double t) { return std::sin(z) * std::exp(-t); };
        auto zero = [](double, double, double) { return 0.0; };

        m["coupled"] = ManufacturedFamily{
            "coupled",
            [](double r, double z, double t) { return r * r * z * std::exp(-t); },
            omega,
            stream,
            v_r,
            v_z,
            [](double r, double z, double t) {
                const double e = std::exp(-t);
                return -r * r * z * e +
                       r * r * (2.0 * std::sin(z) - 2.0 * z * std::cos(z)) * e * e;
            },
            [](double, double z, double t) {
                return (std::sin(2.0 * z) - 2.0 * z) * std::exp(-2.0 * t);
            },
        };
        m["swirl-free-stream"] = ManufacturedFamily{
            "swirl-free-stream",
            zero,
            omega,
            stream,
            v_r,
            v_z,
            zero,
            [](double, double z, double t) { return std::sin(2.0 * z) * std::exp(-2.0 * t); },
        };
        m["rigid-swirl"] = ManufacturedFamily{
            "rigid-swirl", [](double r, double, double) { return r * r; }, zero, zero, zero, zero,
            zero, zero,
        };
        return m;
    }();
    return families;
}

double annulus_bump(const Grid& grid, double r) {
    const double s = std::sin(std::numbers::pi * (r - grid.r_min()) / (grid.r_max() - grid.r_min()));
    return s * s;
}

}  // namespace

const ManufacturedFamily& manufactured(const std::string& tag) {
    const auto& m = registry();
    const auto it = m.find(tag);
    if (it == m.end()) {
        throw std::invalid_argument("unknown manufactured family '" + tag + "'");
    }
    return it->second;
}

std::vector<std::string> manufactured_tags() {
    std::vector<std::string> tags;
    for (const auto& [tag, family] : registry()) {
        tags.push_back(tag);
    }
    return tags;
}

FlowState manufactured_state(const ManufacturedFamily& family, const Grid& grid, double t) {
    auto sample = [&](const SpaceTimeFunction& f, const std::string& name) {
        return ScalarField::from_function(
            grid, [&](double r, double z) { return f(r, z, t); }, name);
    };
    FlowState s{t,
                sample(family.gamma, "Gamma"),
                sample(family.omega, "Omega"),
                sample(family.stream, "L_theta"),
                sample(family.v_r, "v_r"),
                ScalarField(grid, "v_theta"),
                sample(family.v_z, "v_z"),
                ScalarField(grid, "omega_theta"),
                true};
    s.v_theta = times_r_power(s.gamma, -1);
    s.v_theta.rename("v_theta");
    s.omega_theta = times_r_power(s.omega, 1);
    s.omega_theta.rename("omega_theta");
    return s;
}

FlowState decay_initial_state(const std::string& name, const Grid& grid, double amplitude) {
    FlowState s = FlowState::zero(grid, 0.0);
    s.derived_fresh = false;
    if (name == "gaussian-swirl") {
        s.gamma = ScalarField::from_function(
            grid,
            [&](double r, double z) {
                return amplitude * r * r * std::exp(-z * z) * annulus_bump(grid, r);
            },
            "Gamma");
    } else if (name == "zero-swirl") {
        s.omega = ScalarField::from_function(
            grid,
            [&](double r, double z) { return amplitude * std::exp(-z * z) * annulus_bump(grid, r); },
            "Omega");
    } else {
        throw std::invalid_argument("unknown initial condition '" + name + "'");
    }
    return s;
}

std::vector<std::string> decay_initial_names() { return {"gaussian-swirl", "zero-swirl"}; }

}  // namespace axiswirl
