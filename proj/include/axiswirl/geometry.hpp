#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace axiswirl {

/// Point in Cartesian coordinates (x1, x2, x3). The cylindrical radius is
/// |x'| = sqrt(x1^2 + x2^2) and the axial coordinate is x3.
struct Point {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;

    static Point cylindrical(double r, double z, double azimuth = 0.0) {
        return {r * std::cos(azimuth), r * std::sin(azimuth), z};
    }
    double radius() const { return std::hypot(x1, x2); }
    double z() const { return x3; }
};

/**
 * Uniform node lattice on the meridional annulus [r_min, r_max] x [z_min, z_max].
 *
 * Nodes are r_i = r_min + i h_r for i = 0..n_r-1. In z the lattice is either
 * bounded (nodes at both ends, h_z = (z_max - z_min)/(n_z - 1)) or periodic
 * with period z_max - z_min (z_max identified with z_min, h_z = period / n_z).
 * The axis r = 0 is never part of the grid.
 *
 * unit_length is the length, in grid coordinates, that logarithmic factors
 * in the a priori bounds are measured against (ln(r / unit_length)). It is 1
 * for a grid in natural units and becomes 1/k after a dilation by k.
 *
 * Values are stored row-major over (r, z): index(i, j) = i * n_z + j.
 */
class Grid {
public:
    Grid(double r_min, double r_max, double z_min, double z_max, std::size_t n_r,
         std::size_t n_z, bool z_periodic, double unit_length = 1.0);

    double r_min() const { return r_min_; }
    double r_max() const { return r_max_; }
    double z_min() const { return z_min_; }
    double z_max() const { return z_max_; }
    std::size_t n_r() const { return n_r_; }
    std::size_t n_z() const { return n_z_; }
    bool z_periodic() const { return z_periodic_; }
    double unit_length() const { return unit_length_; }
    double h_r() const { return h_r_; }
    double h_z() const { return h_z_; }
    double h_min() const { return h_r_ < h_z_ ? h_r_ : h_z_; }
    double z_period() const { return z_max_ - z_min_; }

    std::size_t size() const { return n_r_ * n_z_; }
    std::size_t index(std::size_t i, std::size_t j) const { return i * n_z_ + j; }
    double r(std::size_t i) const { return r_min_ + static_cast<double>(i) * h_r_; }
    double z(std::size_t j) const { return z_min_ + static_cast<double>(j) * h_z_; }

    /// True when (r, z) lies in the closed meridional footprint (z taken
    /// modulo the period when periodic).
    bool contains(double r, double z) const;

    /// Grid with every length multiplied by factor (unit_length included).
    Grid dilated(double factor) const;

    bool operator==(const Grid& other) const = default;

private:
    double r_min_, r_max_, z_min_, z_max_;
    std::size_t n_r_, n_z_;
    bool z_periodic_;
    double unit_length_;
    double h_r_, h_z_;
};

/// Validated grid construction; throws std::invalid_argument ("axis excluded"
/// for r_min <= 0).
Grid make_grid(double r_min, double r_max, double z_min, double z_max, std::size_t n_r,
               std::size_t n_z, bool z_periodic);

enum class Measure {
    area,    ///< dr dz on the meridional half-plane
    volume,  ///< r dr dz dtheta, integrated over theta
};

/**
 * Measurement region.
 *
 * annular_cylinder: C_{AR,BR} = {AR <= r <= BR, |z - z_center| <= BR}.
 * parabolic: C_{AR,BR} x (-S^2 R^2, 0], the time window being relative to
 *   the evaluation time.
 * ball: the 3D ball of the given radius about center.
 */
struct Region {
    enum class Kind { annular_cylinder, ball, parabolic };

    Kind kind = Kind::annular_cylinder;
    double A = 1.0;
    double B = 4.0;
    double R = 1.0;
    double S = 0.0;
    double z_center = 0.0;
    Point center{};
    double radius = 0.0;
    Measure measure = Measure::volume;

    static Region annular_cylinder(double A, double B, double R = 1.0,
                                   Measure measure = Measure::volume, double z_center = 0.0);
    static Region parabolic(double A, double B, double S, double R = 1.0,
                            Measure measure = Measure::volume, double z_center = 0.0);
    static Region ball(const Point& center, double radius, Measure measure = Measure::volume);

    double inner_radius() const { return A * R; }
    double outer_radius() const { return B * R; }
    double half_height() const { return B * R; }
    /// Length of the parabolic time window, S^2 R^2 (0 for spatial regions).
    double time_window() const { return kind == Kind::parabolic ? S * S * R * R : 0.0; }

    /// Closed-form measure of the unclipped region.
    double exact_measure() const;

    std::string describe() const;

    bool operator==(const Region& other) const;
};

/// Spatial footprint of the hollow cylinder C(sigma) = {5 - 4 sigma < r < 4 sigma,
/// |z| < 4 sigma}, dilated by scale about z = 0 and shifted to z_center.
Region cylinder_c(double sigma, double scale = 1.0, Measure measure = Measure::area,
                  double z_center = 0.0);

/// Region with all lengths multiplied by k and the time window by k^2.
Region scale_region(const Region& region, double k);

/// Node set of a region together with trapezoid quadrature weights.
struct RegionMask {
    std::vector<std::size_t> nodes;
    std::vector<double> weights;
    /// True when part of the region lies outside the grid.
    bool clipped = false;

    std::size_t size() const { return nodes.size(); }
    double total_weight() const;
};

/**
 * Nodes inside the region and their quadrature weights.
 *
 * Membership is node based. Each direction uses the trapezoid rule over the
 * contiguous run of member nodes (end nodes half weight). Area weights are
 * w_r w_z; volume weights are 2 pi r_i w_r w_z. For balls, the volume weight
 * of a node is r_i w_r w_z times the angular extent of the node's circle
 * inside the ball, and membership is "the circle meets the ball".
 *
 * Throws EmptyRegionError when no node qualifies.
 */
RegionMask region_mask(const Grid& grid, const Region& region);

/// Every node of the grid with trapezoid weights under the given measure.
RegionMask grid_mask(const Grid& grid, Measure measure);

}  // namespace axiswirl
