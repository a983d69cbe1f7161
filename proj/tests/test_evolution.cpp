#include <doctest.h>

#include <cmath>
#include <numbers>

#include "axiswirl/commands.hpp"
#include "axiswirl/errors.hpp"
#include "axiswirl/evolution.hpp"
#include "axiswirl/manufactured.hpp"
#include "axiswirl/trajectory.hpp"

using namespace axiswirl;

namespace {

constexpr double kPi = std::numbers::pi;

ScalarField sample(const Grid& g, const std::function<double(double, double)>& f) {
    return ScalarField::from_function(g, f, "f");
}

// Central differences of closed forms, independent of the grid operators.
struct Probe {
    const SpaceTimeFunction& f;
    double h = 1e-3;
    double operator()(double r, double z, double t) const { return f(r, z, t); }
    double dr(double r, double z, double t) const { return (f(r + h, z, t) - f(r - h, z, t)) / (2 * h); }
    double dz(double r, double z, double t) const { return (f(r, z + h, t) - f(r, z - h, t)) / (2 * h); }
    double dt(double r, double z, double t) const { return (f(r, z, t + h) - f(r, z, t - h)) / (2 * h); }
    double drr(double r, double z, double t) const {
        return (f(r + h, z, t) - 2 * f(r, z, t) + f(r - h, z, t)) / (h * h);
    }
    double dzz(double r, double z, double t) const {
        return (f(r, z + h, t) - 2 * f(r, z, t) + f(r, z - h, t)) / (h * h);
    }
};

}  // namespace

TEST_CASE("rhs of the swirl equation") {
    const Grid g = make_grid(0.5, 5, -5, 5, 24, 40, false);
    FlowState s = FlowState::zero(g);
    s.gamma = sample(g, [](double, double) { return 1.7; });
    CHECK(rhs_gamma(s).max_abs() < 1e-13);
    // r^2 is annihilated by D_rr - (1/r) D_r.
    s.gamma = sample(g, [](double r, double) { return r * r; });
    CHECK(rhs_gamma(s).max_abs() < 1e-12);
}

TEST_CASE("rhs of the reduced vorticity equation: swirl source") {
    const Grid g = make_grid(0.5, 5, -5, 5, 24, 40, false);
    FlowState s = FlowState::zero(g);
    s.gamma = sample(g, [](double r, double z) { return r * r * z; });
    s.v_theta = times_r_power(s.gamma, -1);
    // D_z(Gamma^2)/r^4 = D_z(z^2) = 2z, exact on quadratics.
    const ScalarField src = rhs_omega(s);
    for (std::size_t i = 0; i < g.n_r(); ++i) {
        for (std::size_t j = 0; j < g.n_z(); ++j) {
            CHECK(src(i, j) == doctest::Approx(2 * g.z(j)).epsilon(1e-10).scale(1.0));
        }
    }
}

TEST_CASE("manufactured families satisfy their closed-form relations") {
    for (const std::string& tag : manufactured_tags()) {
        CAPTURE(tag);
        const ManufacturedFamily& fam = manufactured(tag);
        const Probe gamma{fam.gamma}, omega{fam.omega}, stream{fam.stream};
        const Probe vr{fam.v_r}, vz{fam.v_z};
        const SpaceTimeFunction gamma2 = [&](double r, double z, double t) {
            return fam.gamma(r, z, t) * fam.gamma(r, z, t);
        };
        const Probe g2{gamma2};
        for (double r : {0.6, 1.3, 2.9, 4.4}) {
            for (double z : {-3.1, -0.2, 0.9, 4.0}) {
                for (double t : {0.05, 0.4}) {
                    const double tol = 1e-5 * (1 + r * r * r);
                    CHECK(vr(r, z, t) == doctest::Approx(-stream.dz(r, z, t)).epsilon(tol).scale(1.0));
                    CHECK(vz(r, z, t) ==
                          doctest::Approx(stream(r, z, t) / r + stream.dr(r, z, t)).epsilon(tol).scale(1.0));
                    const double lop = stream.drr(r, z, t) + stream.dr(r, z, t) / r + stream.dzz(r, z, t) -
                                       stream(r, z, t) / (r * r);
                    CHECK(r * omega(r, z, t) == doctest::Approx(-lop).epsilon(tol).scale(1.0));

                    const double fg = gamma.dt(r, z, t) + vr(r, z, t) * gamma.dr(r, z, t) +
                                      vz(r, z, t) * gamma.dz(r, z, t) -
                                      (gamma.drr(r, z, t) - gamma.dr(r, z, t) / r + gamma.dzz(r, z, t));
                    CHECK(fam.forcing_gamma(r, z, t) == doctest::Approx(fg).epsilon(tol).scale(1.0));

                    const double fo = omega.dt(r, z, t) + vr(r, z, t) * omega.dr(r, z, t) +
                                      vz(r, z, t) * omega.dz(r, z, t) -
                                      (omega.drr(r, z, t) + 3 * omega.dr(r, z, t) / r + omega.dzz(r, z, t)) -
                                      g2.dz(r, z, t) / std::pow(r, 4);
                    CHECK(fam.forcing_omega(r, z, t) == doctest::Approx(fo).epsilon(tol).scale(1.0));
                }
            }
        }
    }
}

TEST_CASE("CFL step examples") {
    // h = 0.01 in both directions.
    const Grid g = make_grid(1, 1.63, 0, 0.64, 64, 64, true);
    FlowState s = FlowState::zero(g);
    CHECK(cfl_dt(s) == doctest::Approx(1.25e-5));
    s.v_z = sample(g, [](double, double) { return 10.0; });
    CHECK(cfl_dt(s) == doctest::Approx(1.25e-5));
    s.v_z = sample(g, [](double, double) { return 1000.0; });
    CHECK(cfl_dt(s) == doctest::Approx(4e-6));

    const Grid fine = make_grid(1, 1.63, 0, 0.64, 127, 128, true);
    CHECK(cfl_dt(FlowState::zero(fine)) == doctest::Approx(1.25e-5 / 4));
    CHECK_THROWS_AS(cfl_dt(s, 1.5, 0.5), std::invalid_argument);
}

TEST_CASE("zero state stays zero") {
    const Grid g = make_grid(0.5, 5, -5, 5, 16, 32, true);
    Stepper stepper(g);
    FlowState s = stepper.prepare(FlowState::zero(g));
    for (int n = 0; n < 5; ++n) {
        s = stepper.step(s, cfl_dt(s));
    }
    CHECK(s.gamma.max_abs() == 0.0);
    CHECK(s.omega.max_abs() == 0.0);
    CHECK(s.stream.max_abs() == 0.0);
    CHECK(s.t > 0);
}

TEST_CASE("rigid swirl is a steady state") {
    const Grid g = make_grid(0.5, 5, -5, 5, 24, 48, false);
    const ManufacturedFamily& fam = manufactured("rigid-swirl");
    Stepper stepper(g, &fam);
    const FlowState initial = stepper.prepare(manufactured_state(fam, g, 0));
    FlowState s = initial;
    for (int n = 0; n < 100; ++n) {
        s = stepper.step(s, cfl_dt(s));
    }
    CHECK((s.gamma - initial.gamma).max_abs() < 1e-10);
    CHECK(s.omega.max_abs() < 1e-10);
    CHECK(s.v_r.max_abs() < 1e-10);
    CHECK(s.v_z.max_abs() < 1e-10);
}

TEST_CASE("zero swirl stays swirl-free") {
    const Grid g = make_grid(0.5, 5, -5, 5, 16, 32, true);
    Stepper stepper(g);
    FlowState s = stepper.prepare(decay_initial_state("zero-swirl", g));
    s = stepper.advance_to(s, 0.05, 0.4, 0.5);
    CHECK(s.gamma.max_abs() == 0.0);
    CHECK(s.omega.max_abs() > 0.0);
}

TEST_CASE("decay runs: maximum principle and energy decay") {
    const Grid g = make_grid(0.5, 5, -5, 5, 24, 48, true);
    Stepper stepper(g);
    FlowState s = stepper.prepare(decay_initial_state("gaussian-swirl", g, 2.0));
    double max_gamma = s.gamma.max_abs();
    double energy = kinetic_energy(s);
    const double m0 = max_gamma;
    for (int n = 0; n < 60; ++n) {
        s = stepper.step(s, cfl_dt(s));
        CHECK(s.gamma.max_abs() <= max_gamma * (1 + 1e-12));
        const double e = kinetic_energy(s);
        CHECK(e <= energy * (1 + 1e-9));
        max_gamma = s.gamma.max_abs();
        energy = e;
    }
    CHECK(max_gamma < m0);
}

TEST_CASE("stepper leaves boundary nodes on their data") {
    const Grid g = make_grid(0.5, 5, -5, 5, 16, 32, false);
    const ManufacturedFamily& fam = manufactured("coupled");
    Stepper stepper(g, &fam);
    FlowState s = stepper.prepare(manufactured_state(fam, g, 0));
    s = stepper.step(s, cfl_dt(s));
    const FlowState exact = manufactured_state(fam, g, s.t);
    for (std::size_t i = 0; i < g.n_r(); ++i) {
        for (std::size_t j = 0; j < g.n_z(); ++j) {
            if (is_boundary_node(g, i, j)) {
                CHECK(s.gamma(i, j) == doctest::Approx(exact.gamma(i, j)).epsilon(1e-14));
                CHECK(s.omega(i, j) == doctest::Approx(exact.omega(i, j)).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("overflow raises BlowUpError carrying the last good state") {
    const Grid g = make_grid(0.5, 5, -kPi, kPi, 16, 32, true);
    Stepper stepper(g);
    FlowState s = FlowState::zero(g);
    s.gamma = sample(g, [](double r, double z) { return 1e160 * r * r * std::sin(z); });
    s = stepper.prepare(s);
    try {
        stepper.step(s, 1e-6);
        FAIL("expected BlowUpError");
    } catch (const BlowUpError& e) {
        CHECK(e.last_good().t == s.t);
        CHECK(e.last_good().gamma.all_finite());
    }
}

TEST_CASE("manufactured swirl-free stream converges at second order") {
    MmsOptions opt;
    opt.t_end = 0.05;
    const auto rows = mms_verify("swirl-free-stream", {{16, 32}, {32, 64}, {64, 128}}, opt);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].error_gamma == 0.0);
    CHECK(rows[2].order_omega > 1.9);
    CHECK(rows[2].error_omega < rows[1].error_omega);
}

TEST_CASE("trajectory retention keeps the look-back window") {
    const Grid g = make_grid(0.5, 5, -5, 5, 8, 8, true);
    Trajectory traj(1.0);
    for (int n = 0; n <= 10; ++n) {
        FlowState s = FlowState::zero(g, 0.25 * n);
        s.gamma = sample(g, [n](double, double) { return 10.0 - n; });
        traj.append(s);
    }
    CHECK(traj.m0() == 10.0);
    CHECK(traj.back().t == 2.5);
    CHECK(traj.front().t == 1.5);
    CHECK_NOTHROW(traj.require_window(2.5, 1.0));
    CHECK_THROWS_AS(traj.require_window(2.5, 1.1), RetentionError);
    CHECK_THROWS_AS(traj.require_window(2.75, 0.5), RetentionError);
    CHECK_THROWS_AS(traj.append(FlowState::zero(g, 2.5)), std::invalid_argument);
    CHECK_THROWS_AS(Trajectory(-1), std::invalid_argument);
}

TEST_CASE("trajectory integrals and sups") {
    const Grid g = make_grid(0.5, 5, -5, 5, 8, 8, true);
    Trajectory traj;
    for (int n = 0; n <= 8; ++n) {
        traj.append(FlowState::zero(g, 0.125 * n));
    }
    auto linear = [](const FlowState& s) { return 3 * s.t + 1; };
    // Trapezoid is exact on a linear integrand, including a window edge between snapshots.
    CHECK(traj.integrate(1.0, 1.0, linear) == doctest::Approx(2.5));
    CHECK(traj.integrate(1.0, 0.3, linear) == doctest::Approx(0.3 + 1.5 * (1 - 0.49)));
    CHECK(traj.sup(0.5, 0.25, linear) == doctest::Approx(2.5));
    CHECK(traj.sup(1.0, 1.0, [](const FlowState& s) { return -std::abs(s.t - 0.5); }) == 0.0);
    CHECK(traj.window_indices(0.5, 0.25).size() == 3);
}
