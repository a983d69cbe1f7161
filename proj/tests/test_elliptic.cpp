#include <doctest.h>

#include <cmath>
#include <numbers>

#include "axiswirl/ball_quadrature.hpp"
#include "axiswirl/elliptic.hpp"
#include "axiswirl/errors.hpp"
#include "axiswirl/manufactured.hpp"

using namespace axiswirl;

namespace {

constexpr double kPi = std::numbers::pi;

ScalarField sample(const Grid& g, const std::function<double(double, double)>& f) {
    return ScalarField::from_function(g, f, "f");
}

// omega_theta = -(D_rr + D_r/r + D_zz - 1/r^2) L for the closed form L.
struct StreamCase {
    std::function<double(double, double)> l;
    std::function<double(double, double)> omega_theta;
};

double solve_error(const StreamCase& c, std::size_t n_r, std::size_t n_z) {
    const Grid g = make_grid(0.5, 5, -5, 5, n_r, n_z, false);
    const ScalarField exact = sample(g, c.l);
    const StreamSolution sol = solve_stream(sample(g, c.omega_theta), exact);
    return (sol.stream - exact).max_abs();
}

}  // namespace

TEST_CASE("zero vorticity and zero boundary give zero stream") {
    const Grid g = make_grid(0.5, 5, -5, 5, 32, 64, false);
    const ScalarField zero(g, "zero");
    const StreamSolution sol = solve_stream(zero, zero);
    CHECK(sol.stream.max_abs() == 0.0);
    CHECK(sol.report.residual_norm == 0.0);
}

TEST_CASE("L = r sin z is recovered at second order") {
    // D_rr(r) + D_r(r)/r - r/r^2 = 0, so omega_theta = r sin z.
    const StreamCase c{[](double r, double z) { return r * std::sin(z); },
                       [](double r, double z) { return r * std::sin(z); }};
    const double e1 = solve_error(c, 32, 64);
    const double e2 = solve_error(c, 64, 128);
    const double e3 = solve_error(c, 128, 256);
    CHECK(e3 < 1e-3);
    CHECK(std::log2(e1 / e2) > 1.9);
    CHECK(std::log2(e2 / e3) > 1.9);
}

TEST_CASE("curved stream function converges at second order") {
    // L = sin(r) e^{-z^2}.
    const StreamCase c{
        [](double r, double z) { return std::sin(r) * std::exp(-z * z); },
        [](double r, double z) {
            const double e = std::exp(-z * z);
            const double l_rr = -std::sin(r) * e;
            const double l_r = std::cos(r) * e;
            const double l_zz = std::sin(r) * (4 * z * z - 2) * e;
            return -(l_rr + l_r / r + l_zz - std::sin(r) * e / (r * r));
        }};
    const double e1 = solve_error(c, 32, 64);
    const double e2 = solve_error(c, 64, 128);
    CHECK(std::log2(e1 / e2) > 1.9);
}

TEST_CASE("solver residual stays below its tolerance") {
    const Grid g = make_grid(0.5, 5, -5, 5, 48, 96, true);
    StreamSolver solver(g);
    const ScalarField w = sample(g, [](double r, double z) { return std::exp(-r) * std::cos(2 * kPi * z / 10); });
    const ScalarField bc = sample(g, [](double r, double) { return 0.3 / r; });
    const StreamSolution sol = solver.solve(w, bc);
    CHECK(sol.report.residual_norm <= sol.report.tolerance);
    CHECK(sol.report.iterations <= 4);
    CHECK(solver.residual(sol.stream, w).max_abs() <= sol.report.tolerance * 10);
    // Boundary rows carry the Dirichlet data unchanged.
    CHECK(sol.stream(0, 5) == bc(0, 5));
    CHECK(sol.stream(47, 9) == bc(47, 9));
}

TEST_CASE("stream solve is linear") {
    const Grid g = make_grid(0.5, 5, -5, 5, 40, 80, false);
    StreamSolver solver(g, 1e-13, 8);
    const ScalarField w1 = sample(g, [](double r, double z) { return r * std::sin(z); });
    const ScalarField w2 = sample(g, [](double r, double z) { return std::cos(r * z); });
    const ScalarField b1 = sample(g, [](double r, double z) { return r + z; });
    const ScalarField b2 = sample(g, [](double r, double) { return 1 / r; });
    const ScalarField l1 = solver.solve(w1, b1).stream;
    const ScalarField l2 = solver.solve(w2, b2).stream;
    const ScalarField l12 = solver.solve(2.0 * w1 - 3.0 * w2, 2.0 * b1 - 3.0 * b2).stream;
    CHECK((l12 - (2.0 * l1 - 3.0 * l2)).max_abs() < 1e-10 * l12.max_abs());
}

TEST_CASE("unreachable tolerance raises EllipticSolveError") {
    const Grid g = make_grid(0.5, 5, -5, 5, 32, 64, false);
    StreamSolver solver(g, 1e-30, 1);
    const ScalarField w = sample(g, [](double r, double z) { return r * std::sin(z); });
    CHECK_THROWS_AS(solver.solve(w, ScalarField(g, "bc")), EllipticSolveError);
}

TEST_CASE("velocity examples") {
    const Grid g = make_grid(0.5, 5, -5, 5, 32, 64, false);
    const auto [vr0, vz0] = velocity_from_stream(ScalarField(g, "zero"));
    CHECK(vr0.max_abs() == 0.0);
    CHECK(vz0.max_abs() == 0.0);

    // r L constant: no flow.
    const auto [vr1, vz1] = velocity_from_stream(sample(g, [](double r, double) { return 0.7 / r; }));
    CHECK(vr1.max_abs() == 0.0);
    CHECK(vz1.max_abs() < 1e-13);

    double prev = 0;
    for (std::size_t n : {32u, 64u, 128u}) {
        const Grid h = make_grid(0.5, 5, -5, 5, n, 2 * n, false);
        const auto [vr, vz] = velocity_from_stream(sample(h, [](double r, double z) { return r * std::sin(z); }));
        const double e = (vr - sample(h, [](double r, double z) { return -r * std::cos(z); })).max_abs() +
                         (vz - sample(h, [](double, double z) { return 2 * std::sin(z); })).max_abs();
        if (prev > 0) {
            CHECK(std::log2(prev / e) > 1.9);
        }
        prev = e;
    }
}

TEST_CASE("gradient identity for the stream function") {
    const Grid g = make_grid(0.5, 5, -5, 5, 32, 64, false);
    const ScalarField zero(g, "zero");
    CHECK(stream_gradient_identity(zero, zero, zero) == 0.0);

    // r L quadratic in r: product rule and D_r(r L) agree exactly.
    const ScalarField l = sample(g, [](double r, double z) { return r * std::sin(z); });
    const auto [vr, vz] = velocity_from_stream(l);
    CHECK(stream_gradient_identity(l, vr, vz) < 1e-10);

    // L = 2/r carries no flow; the product rule only reproduces D_r(r L) = 0 to O(h^2).
    const Grid fine = make_grid(0.5, 5, -5, 5, 64, 128, false);
    const ScalarField c = sample(g, [](double r, double) { return 2 / r; });
    const ScalarField cf = sample(fine, [](double r, double) { return 2 / r; });
    const auto [vrc, vzc] = velocity_from_stream(c);
    const auto [vrf, vzf] = velocity_from_stream(cf);
    CHECK(std::log2(stream_gradient_identity(c, vrc, vzc) / stream_gradient_identity(cf, vrf, vzf)) > 1.9);

    double prev = 0;
    for (std::size_t n : {32u, 64u, 128u}) {
        const Grid h = make_grid(0.5, 5, -5, 5, n, 2 * n, false);
        const ScalarField s = sample(h, [](double r, double z) { return r * r * std::cos(z); });
        const auto [a, b] = velocity_from_stream(s);
        const double e = stream_gradient_identity(s, a, b);
        if (prev > 0) {
            CHECK(std::log2(prev / e) >= 1.9);
        }
        prev = e;
    }
}

TEST_CASE("Biot-Savart radius") {
    CHECK(biot_savart_radius(0.1) == doctest::Approx(std::pow(0.1, 1.5) / std::sqrt(std::log(10.0))));
    CHECK(biot_savart_radius(0.1) == doctest::Approx(0.02084).epsilon(1e-3));
    CHECK(biot_savart_radius(0.05, 0.5) == doctest::Approx(0.5 * biot_savart_radius(0.1)));
    CHECK_THROWS_AS(biot_savart_radius(0.0), std::invalid_argument);
    CHECK_THROWS_AS(biot_savart_radius(1.0), std::invalid_argument);
}

TEST_CASE("Biot-Savart report on simple states") {
    const Grid g = make_grid(0.02, 0.5, -0.25, 0.25, 64, 64, false);
    const Point x = Point::cylindrical(0.1, 0.0);

    const BiotSavartReport zero = biot_savart_report(FlowState::zero(g), x);
    CHECK(zero.lhs_sup_b == 0.0);
    CHECK(zero.implied_constant == 0.0);
    CHECK(zero.n_balls == 3);
    CHECK(zero.r0 == doctest::Approx(biot_savart_radius(0.1)));

    // Uniform axial flow: irrotational, |b| = 1 on every ball.
    FlowState s = FlowState::zero(g);
    s.v_z = sample(g, [](double, double) { return 1.0; });
    const BiotSavartReport u = biot_savart_report(s, x);
    CHECK(u.lhs_sup_b == doctest::Approx(1.0));
    CHECK(u.term_vort == doctest::Approx(0.0));
    const double vol = 4.0 / 3.0 * kPi * std::pow(2 * u.r0, 3);
    CHECK(u.term_lp == doctest::Approx(std::pow(u.r0, -1.5) * std::sqrt(vol)).epsilon(1e-8));
    CHECK_FALSE(u.clipped);

    // Homogeneous of degree zero in the field amplitude.
    FlowState s3 = s;
    s3.v_z = 3.0 * s.v_z;
    CHECK(biot_savart_report(s3, x).implied_constant == doctest::Approx(u.implied_constant));

    CHECK_THROWS_AS(biot_savart_report(s, Point::cylindrical(0.6, 0)), std::invalid_argument);
}

TEST_CASE("Gauss-Legendre rule") {
    std::vector<double> x, w;
    gauss_legendre(6, x, w);
    double sum = 0, m10 = 0, m11 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += w[i];
        m10 += w[i] * std::pow(x[i], 10);
        m11 += w[i] * std::pow(x[i], 11);
    }
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(m10 == doctest::Approx(2.0 / 11).epsilon(1e-14));
    CHECK(std::abs(m11) < 1e-15);
}

TEST_CASE("ball rule integrates polynomials") {
    const Point c{0.3, -0.2, 0.7};
    const double rho = 0.4;
    double vol = 0, second = 0;
    for (const BallSample& s : ball_rule(c, rho)) {
        vol += s.weight;
        second += s.weight * (s.x.x3 - c.x3) * (s.x.x3 - c.x3);
    }
    CHECK(vol == doctest::Approx(4.0 / 3.0 * kPi * std::pow(rho, 3)).epsilon(1e-13));
    CHECK(second == doctest::Approx(4.0 * kPi * std::pow(rho, 5) / 15).epsilon(1e-13));
}

TEST_CASE("ball energy is invariant under rotation about the axis") {
    const Grid g = make_grid(0.5, 5, -5, 5, 64, 128, false);
    const FlowState s = manufactured_state(manufactured("coupled"), g, 0.1);
    const std::vector<const ScalarField*> comps{&s.v_r, &s.v_theta, &s.v_z};
    const double e0 = ball_energy(evaluate_on_ball(ball_rule(Point::cylindrical(2, 0.3, 0.0), 0.5), comps));
    for (double phi : {0.4, 1.7, 3.0}) {
        const double e = ball_energy(evaluate_on_ball(ball_rule(Point::cylindrical(2, 0.3, phi), 0.5), comps));
        CHECK(e == doctest::Approx(e0).epsilon(1e-10));
    }
}
