#pragma once

#include <cstddef>
#include <vector>

#include "axiswirl/field.hpp"
#include "axiswirl/geometry.hpp"

namespace axiswirl {

/// Resolution of the product rule in ball coordinates (rho, polar, azimuth).
struct BallRuleSize {
    std::size_t n_rho = 12;
    std::size_t n_polar = 12;
    std::size_t n_azimuth = 24;
};

struct BallSample {
    Point x;
    double weight;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights);

/**
 * Product quadrature rule for the 3D ball B(center, radius).
 *
 * Gauss-Legendre in rho (weight rho^2) and in cos(polar), periodic trapezoid
 * in azimuth. The sample set is expressed in the frame rotated to the
 * center's own azimuth, so rotating the center about the z-axis rotates the
 * samples with it. Weights sum to the ball volume up to round-off.
 */
std::vector<BallSample> ball_rule(const Point& center, double radius,
                                  const BallRuleSize& size = {});

/// Samples of a ball rule with the axisymmetric field values looked up at
/// their cylindrical coordinates; samples outside the grid are dropped.
struct BallEvaluation {
    std::vector<double> weight;
    /// values[c][s]: component c at kept sample s.
    std::vector<std::vector<double>> values;
    bool clipped = false;
};

BallEvaluation evaluate_on_ball(const std::vector<BallSample>& rule,
                                const std::vector<const ScalarField*>& components);

/// Integral over a ball of the sum of squared components.
double ball_energy(const BallEvaluation& eval);

}  // namespace axiswirl
