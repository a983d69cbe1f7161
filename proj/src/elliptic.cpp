#include "axiswirl/elliptic.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "axiswirl/errors.hpp"

namespace axiswirl {

namespace {

constexpr std::ptrdiff_t kBoundary = -1;

}  // namespace

struct StreamSolver::Impl {
    std::vector<std::ptrdiff_t> unknown;  // node -> unknown id, kBoundary for Dirichlet nodes
    std::vector<std::size_t> node_of;     // unknown id -> node
    Eigen::SparseMatrix<double> matrix;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factor;
    Eigen::VectorXd rhs, x, correction, defect;
};

StreamSolver::StreamSolver(const Grid& grid, double relative_tolerance,
                           std::size_t max_iterations)
    : grid_(grid),
      relative_tolerance_(relative_tolerance),
      max_iterations_(max_iterations),
      impl_(std::make_unique<Impl>()) {
    if (!(relative_tolerance > 0.0) || max_iterations == 0) {
        throw std::invalid_argument("solver tolerance and iteration cap must be positive");
    }
    const std::size_t nr = grid.n_r();
    const std::size_t nz = grid.n_z();
    const bool periodic = grid.z_periodic();

    impl_->unknown.assign(grid.size(), kBoundary);
    for (std::size_t i = 1; i + 1 < nr; ++i) {
        for (std::size_t j = 0; j < nz; ++j) {
            if (!periodic && (j == 0 || j + 1 == nz)) {
                continue;
            }
            impl_->unknown[grid.index(i, j)] = static_cast<std::ptrdiff_t>(impl_->node_of.size());
            impl_->node_of.push_back(grid.index(i, j));
        }
    }

    // -r times the five-point operator: symmetric because the r-flux
    // coefficients are evaluated at the half nodes r_{i +- 1/2}.
    const double hr2 = grid.h_r() * grid.h_r();
    const double hz2 = grid.h_z() * grid.h_z();
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(5 * impl_->node_of.size());
    for (std::size_t u = 0; u < impl_->node_of.size(); ++u) {
        const std::size_t node = impl_->node_of[u];
        const std::size_t i = node / nz;
        const std::size_t j = node % nz;
        const double r = grid.r(i);
        const double r_up = grid.r_min() + (static_cast<double>(i) + 0.5) * grid.h_r();
        const double r_dn = grid.r_min() + (static_cast<double>(i) - 0.5) * grid.h_r();
        const auto col = static_cast<Eigen::Index>(u);
        entries.emplace_back(col, col, 2.0 * r / hr2 + 2.0 * r / hz2 + 1.0 / r);
        auto couple = [&](std::size_t nb, double coef) {
            const std::ptrdiff_t v = impl_->unknown[nb];
            if (v != kBoundary) {
                entries.emplace_back(col, static_cast<Eigen::Index>(v), -coef);
            }
        };
        couple(grid.index(i + 1, j), r_up / hr2);
        couple(grid.index(i - 1, j), r_dn / hr2);
        const std::size_t jn = j + 1 == nz ? 0 : j + 1;
        const std::size_t js = j == 0 ? nz - 1 : j - 1;
        couple(grid.index(i, jn), r / hz2);
        couple(grid.index(i, js), r / hz2);
    }
    const auto n = static_cast<Eigen::Index>(impl_->node_of.size());
    impl_->matrix.resize(n, n);
    impl_->matrix.setFromTriplets(entries.begin(), entries.end());
    impl_->factor.compute(impl_->matrix);
    if (impl_->factor.info() != Eigen::Success) {
        throw EllipticSolveError("stream operator factorization failed", INFINITY);
    }
}

StreamSolver::~StreamSolver() = default;
StreamSolver::StreamSolver(StreamSolver&&) noexcept = default;
StreamSolver& StreamSolver::operator=(StreamSolver&&) noexcept = default;

ScalarField StreamSolver::residual(const ScalarField& stream, const ScalarField& omega_theta) const {
    const Grid& g = grid_;
    const std::size_t nz = g.n_z();
    const double hr2 = g.h_r() * g.h_r();
    const double hz2 = g.h_z() * g.h_z();
    ScalarField res(g, "residual");
    for (std::size_t node : impl_->node_of) {
        const std::size_t i = node / nz;
        const std::size_t j = node % nz;
        const std::size_t jn = j + 1 == nz ? 0 : j + 1;
        const std::size_t js = j == 0 ? nz - 1 : j - 1;
        const double r = g.r(i);
        const double c = stream(i, j);
        const double e = stream(i + 1, j);
        const double w = stream(i - 1, j);
        res(i, j) = (e - 2.0 * c + w) / hr2 + (e - w) / (2.0 * r * g.h_r()) +
                    (stream(i, jn) - 2.0 * c + stream(i, js)) / hz2 - c / (r * r) +
                    omega_theta(i, j);
    }
    return res;
}

StreamSolution StreamSolver::solve(const ScalarField& omega_theta, const ScalarField& boundary) {
    if (!(omega_theta.grid() == grid_) || !(boundary.grid() == grid_)) {
        throw std::invalid_argument("stream solve: fields are not on the solver grid");
    }
    const Grid& g = grid_;
    const std::size_t nz = g.n_z();
    const double hr2 = g.h_r() * g.h_r();
    const double hz2 = g.h_z() * g.h_z();
    Impl& w = *impl_;
    const auto n = static_cast<Eigen::Index>(w.node_of.size());

    // Dirichlet nodes keep the boundary data; their couplings move to the rhs.
    ScalarField stream(g, "L_theta");
    for (std::size_t node = 0; node < g.size(); ++node) {
        if (w.unknown[node] == kBoundary) {
            stream[node] = boundary[node];
        }
    }
    w.rhs.resize(n);
    for (Eigen::Index u = 0; u < n; ++u) {
        const std::size_t node = w.node_of[static_cast<std::size_t>(u)];
        const std::size_t i = node / nz;
        const std::size_t j = node % nz;
        const double r = g.r(i);
        double b = r * omega_theta[node];
        auto lift = [&](std::size_t nb, double coef) {
            if (w.unknown[nb] == kBoundary) {
                b += coef * stream[nb];
            }
        };
        lift(g.index(i + 1, j), (g.r_min() + (static_cast<double>(i) + 0.5) * g.h_r()) / hr2);
        lift(g.index(i - 1, j), (g.r_min() + (static_cast<double>(i) - 0.5) * g.h_r()) / hr2);
        lift(g.index(i, j + 1 == nz ? 0 : j + 1), r / hz2);
        lift(g.index(i, j == 0 ? nz - 1 : j - 1), r / hz2);
        w.rhs[u] = b;
    }

    w.x = w.factor.solve(w.rhs);

    // Operator scale: the largest stencil coefficient times the solution size.
    double rms_omega = 0.0;
    for (std::size_t node : w.node_of) {
        rms_omega += omega_theta[node] * omega_theta[node];
    }
    rms_omega = n > 0 ? std::sqrt(rms_omega / static_cast<double>(n)) : 0.0;
    const double stencil = 2.0 / hr2 + 2.0 / hz2 + 1.0 / (g.r_min() * g.r_min());

    EllipticSolveReport report;
    for (std::size_t iter = 1;; ++iter) {
        for (Eigen::Index u = 0; u < n; ++u) {
            stream[w.node_of[static_cast<std::size_t>(u)]] = w.x[u];
        }
        const ScalarField res = residual(stream, omega_theta);
        double sq = 0.0;
        for (std::size_t node : w.node_of) {
            sq += res[node] * res[node];
        }
        report.iterations = iter;
        report.residual_norm = n > 0 ? std::sqrt(sq / static_cast<double>(n)) : 0.0;
        report.tolerance =
            relative_tolerance_ * (rms_omega + stencil * std::max(stream.max_abs(), 1e-300));
        if (!std::isfinite(report.residual_norm)) {
            throw EllipticSolveError("stream solve produced non-finite values",
                                     report.residual_norm);
        }
        if (report.residual_norm <= report.tolerance) {
            break;
        }
        if (iter >= max_iterations_) {
            throw EllipticSolveError("stream solve did not reach tolerance within " +
                                         std::to_string(max_iterations_) + " iterations",
                                     report.residual_norm);
        }
        w.defect = w.rhs - w.matrix * w.x;
        w.correction = w.factor.solve(w.defect);
        w.x += w.correction;
    }
    return {std::move(stream), report};
}

StreamSolution solve_stream(const ScalarField& omega_theta, const ScalarField& boundary) {
    StreamSolver solver(omega_theta.grid());
    return solver.solve(omega_theta, boundary);
}

namespace {

// First difference of a lattice line in extended precision, same stencils
// as ddr/ddz.
void diff_line(std::size_t n, long double h, bool periodic, const long double* in,
               std::size_t stride, long double* out) {
    const long double inv2h = 0.5L / h;
    auto at = [&](std::size_t m) { return in[m * stride]; };
    if (periodic) {
        for (std::size_t m = 0; m < n; ++m) {
            const std::size_t up = m + 1 == n ? 0 : m + 1;
            const std::size_t dn = m == 0 ? n - 1 : m - 1;
            out[m * stride] = (at(up) - at(dn)) * inv2h;
        }
        return;
    }
    out[0] = (-3.0L * at(0) + 4.0L * at(1) - at(2)) * inv2h;
    for (std::size_t m = 1; m + 1 < n; ++m) {
        out[m * stride] = (at(m + 1) - at(m - 1)) * inv2h;
    }
    out[(n - 1) * stride] = (3.0L * at(n - 1) - 4.0L * at(n - 2) + at(n - 3)) * inv2h;
}

}  // namespace

std::pair<ScalarField, ScalarField> velocity_from_stream(const ScalarField& stream) {
    // The two velocity components each nest a difference of r L inside the
    // divergence; carrying them in extended precision keeps the discrete
    // divergence at the rounding level of the stored doubles rather than
    // eps |r L| / h^2.
    const Grid& g = stream.grid();
    const std::size_t nr = g.n_r();
    const std::size_t nz = g.n_z();
    std::vector<long double> l(g.size()), rl(g.size()), dz(g.size()), dr(g.size());
    for (std::size_t i = 0; i < nr; ++i) {
        const long double r = static_cast<long double>(g.r_min()) +
                              static_cast<long double>(i) * static_cast<long double>(g.h_r());
        for (std::size_t j = 0; j < nz; ++j) {
            l[g.index(i, j)] = stream(i, j);
            rl[g.index(i, j)] = r * stream(i, j);
        }
    }
    for (std::size_t i = 0; i < nr; ++i) {
        diff_line(nz, g.h_z(), g.z_periodic(), &l[g.index(i, 0)], 1, &dz[g.index(i, 0)]);
    }
    for (std::size_t j = 0; j < nz; ++j) {
        diff_line(nr, g.h_r(), false, &rl[j], nz, &dr[j]);
    }
    ScalarField v_r(g, "v_r");
    ScalarField v_z(g, "v_z");
    for (std::size_t i = 0; i < nr; ++i) {
        const long double r = static_cast<long double>(g.r_min()) +
                              static_cast<long double>(i) * static_cast<long double>(g.h_r());
        for (std::size_t j = 0; j < nz; ++j) {
            v_r(i, j) = static_cast<double>(-dz[g.index(i, j)]);
            v_z(i, j) = static_cast<double>(dr[g.index(i, j)] / r);
        }
    }
    return {std::move(v_r), std::move(v_z)};
}

double stream_gradient_identity(const ScalarField& stream, const ScalarField& v_r,
                                const ScalarField& v_z) {
    const Grid& g = stream.grid();
    const ScalarField dr = ddr(stream);
    const ScalarField dz = ddz(stream);
    const std::size_t j_lo = g.z_periodic() ? 0 : 1;
    const std::size_t j_hi = g.z_periodic() ? g.n_z() : g.n_z() - 1;
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < g.n_r(); ++i) {
        const double r = g.r(i);
        for (std::size_t j = j_lo; j < j_hi; ++j) {
            const double gr = stream(i, j) + r * dr(i, j);
            const double gz = r * dz(i, j);
            const double b2 = v_r(i, j) * v_r(i, j) + v_z(i, j) * v_z(i, j);
            worst = std::max(worst, std::abs(gr * gr + gz * gz - r * r * b2));
        }
    }
    return worst;
}

double biot_savart_radius(double r, double unit_length) {
    const double s = r / unit_length;
    if (!(s > 0.0) || !(s < 1.0)) {
        throw std::invalid_argument("Biot-Savart radius needs 0 < r < unit length");
    }
    return unit_length * std::pow(s, 1.5) / std::sqrt(std::abs(std::log(s)));
}

BiotSavartReport biot_savart_report(const FlowState& state, const Point& x, double p,
                                    const BallRuleSize& rule) {
    if (!(p >= 1.0) || std::isinf(p)) {
        throw std::invalid_argument("Biot-Savart exponent must be finite and >= 1");
    }
    const double unit = state.grid().unit_length();
    BiotSavartReport rep;
    rep.r = x.radius();
    rep.p = p;
    if (!(rep.r > 0.0) || rep.r > 0.5 * unit) {
        throw std::invalid_argument("Biot-Savart report needs 0 < |x'| <= 1/2");
    }
    const double s = rep.r / unit;
    rep.r0 = biot_savart_radius(rep.r, unit);
    rep.n_balls = static_cast<std::size_t>(std::ceil(rep.r / (2.0 * rep.r0)));
    rep.ring_factor = std::sqrt(s) / std::sqrt(std::abs(std::log(s)));

    const std::vector<const ScalarField*> b{&state.v_r, &state.v_z};
    const std::vector<const ScalarField*> w{&state.omega_theta};

    // sup |b| on B(x, r0): quadrature samples plus the center itself.
    BallEvaluation inner = evaluate_on_ball(ball_rule(x, rep.r0, rule), b);
    double sup_b = 0.0;
    for (std::size_t k = 0; k < inner.weight.size(); ++k) {
        sup_b = std::max(sup_b, std::hypot(inner.values[0][k], inner.values[1][k]));
    }
    const auto cr = interpolate(state.v_r, rep.r, x.z());
    const auto cz = interpolate(state.v_z, rep.r, x.z());
    if (cr && cz) {
        sup_b = std::max(sup_b, std::hypot(*cr, *cz));
    } else {
        inner.clipped = true;
    }
    rep.lhs_sup_b = sup_b;

    const auto outer_rule = ball_rule(x, 2.0 * rep.r0, rule);
    const BallEvaluation outer = evaluate_on_ball(outer_rule, b);
    const BallEvaluation outer_w = evaluate_on_ball(outer_rule, w);
    double lp = 0.0;
    for (std::size_t k = 0; k < outer.weight.size(); ++k) {
        const double mag = std::hypot(outer.values[0][k], outer.values[1][k]);
        lp += outer.weight[k] * std::pow(mag, p);
    }
    rep.term_lp = std::pow(rep.r0, -3.0 / p) * std::pow(lp, 1.0 / p);
    double sup_w = 0.0;
    for (double v : outer_w.values[0]) {
        sup_w = std::max(sup_w, std::abs(v));
    }
    rep.term_vort = rep.r0 * sup_w;
    const double denom = rep.term_lp + rep.term_vort;
    rep.implied_constant = denom > 0.0 ? rep.lhs_sup_b / denom : 0.0;

    rep.ball_energy = ball_energy(outer);
    const RegionMask everything = grid_mask(state.grid(), Measure::volume);
    const double total = std::pow(vector_norm(b, everything), 2);
    rep.ring_energy_ratio = total > 0.0 ? rep.ball_energy / total : 0.0;
    rep.clipped = inner.clipped || outer.clipped || outer_w.clipped;
    return rep;
}

}  // namespace axiswirl
