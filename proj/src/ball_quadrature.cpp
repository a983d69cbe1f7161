#include "axiswirl/ball_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace axiswirl {

void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n == 0) {
        throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
    }
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const double dn = static_cast<double>(n);
    for (std::size_t k = 0; k < (n + 1) / 2; ++k) {
        // Newton from the Chebyshev-like initial guess.
        double x = std::cos(std::numbers::pi * (static_cast<double>(k) + 0.75) / (dn + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t m = 2; m <= n; ++m) {
                const double dm = static_cast<double>(m);
                const double p2 = ((2.0 * dm - 1.0) * x * p1 - (dm - 1.0) * p0) / dm;
                p0 = p1;
                p1 = p2;
            }
            dp = dn * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0;
        double p1 = x;
        for (std::size_t m = 2; m <= n; ++m) {
            const double dm = static_cast<double>(m);
            const double p2 = ((2.0 * dm - 1.0) * x * p1 - (dm - 1.0) * p0) / dm;
            p0 = p1;
            p1 = p2;
        }
        dp = dn * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[k] = -x;
        nodes[n - 1 - k] = x;
        weights[k] = w;
        weights[n - 1 - k] = w;
    }
    if (n % 2 == 1) {
        nodes[n / 2] = 0.0;
    }
}

std::vector<BallSample> ball_rule(const Point& center, double radius, const BallRuleSize& size) {
    if (!(radius > 0.0)) {
        throw std::invalid_argument("ball radius must be positive");
    }
    std::vector<double> xr, wr, xm, wm;
    gauss_legendre(size.n_rho, xr, wr);
    gauss_legendre(size.n_polar, xm, wm);

    const double rc = center.radius();
    const double alpha = rc > 0.0 ? std::atan2(center.x2, center.x1) : 0.0;
    const double ca = std::cos(alpha);
    const double sa = std::sin(alpha);
    const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(size.n_azimuth);

    std::vector<BallSample> rule;
    rule.reserve(size.n_rho * size.n_polar * size.n_azimuth);
    for (std::size_t a = 0; a < size.n_rho; ++a) {
        const double rho = 0.5 * radius * (xr[a] + 1.0);
        const double w_rho = 0.5 * radius * wr[a] * rho * rho;
        for (std::size_t b = 0; b < size.n_polar; ++b) {
            const double mu = xm[b];
            const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
            for (std::size_t c = 0; c < size.n_azimuth; ++c) {
                const double theta = dtheta * static_cast<double>(c);
                // Offset in the frame whose first axis points along x'.
                const double d1 = rho * s * std::cos(theta);
                const double d2 = rho * s * std::sin(theta);
                const double d3 = rho * mu;
                rule.push_back({{center.x1 + ca * d1 - sa * d2, center.x2 + sa * d1 + ca * d2,
                                 center.x3 + d3},
                                w_rho * wm[b] * dtheta});
            }
        }
    }
    return rule;
}

BallEvaluation evaluate_on_ball(const std::vector<BallSample>& rule,
                                const std::vector<const ScalarField*>& components) {
    BallEvaluation eval;
    eval.values.resize(components.size());
    for (const BallSample& s : rule) {
        const double r = s.x.radius();
        const double z = s.x.z();
        std::vector<double> sample(components.size());
        bool inside = true;
        for (std::size_t c = 0; c < components.size() && inside; ++c) {
            const auto v = interpolate(*components[c], r, z);
            if (!v) {
                inside = false;
            } else {
                sample[c] = *v;
            }
        }
        if (!inside) {
            eval.clipped = true;
            continue;
        }
        eval.weight.push_back(s.weight);
        for (std::size_t c = 0; c < components.size(); ++c) {
            eval.values[c].push_back(sample[c]);
        }
    }
    return eval;
}

double ball_energy(const BallEvaluation& eval) {
    double sum = 0.0;
    for (std::size_t s = 0; s < eval.weight.size(); ++s) {
        double sq = 0.0;
        for (const auto& comp : eval.values) {
            sq += comp[s] * comp[s];
        }
        sum += eval.weight[s] * sq;
    }
    return sum;
}

}  // namespace axiswirl
