#include "axiswirl/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "axiswirl/errors.hpp"

namespace axiswirl {

namespace {

constexpr double kPi = std::numbers::pi;

// Membership slack, relative to the spacing, so that region edges landing
// on a node include it regardless of round-off in the node coordinate.
constexpr double kEdgeSlack = 1e-9;

struct Run1D {
    std::vector<std::size_t> index;
    std::vector<double> weight;
    bool clipped = false;
};

// Trapezoid weights over the contiguous run of nodes x_0 + m h in [lo, hi].
Run1D bounded_run(double x0, double h, std::size_t n, double lo, double hi) {
    Run1D run;
    const double slack = kEdgeSlack * h;
    const double x_last = x0 + static_cast<double>(n - 1) * h;
    run.clipped = lo < x0 - slack || hi > x_last + slack;
    for (std::size_t m = 0; m < n; ++m) {
        const double x = x0 + static_cast<double>(m) * h;
        if (x >= lo - slack && x <= hi + slack) {
            run.index.push_back(m);
        }
    }
    if (run.index.empty()) {
        return run;
    }
    run.weight.assign(run.index.size(), h);
    run.weight.front() *= 0.5;
    run.weight.back() *= 0.5;
    if (run.index.size() == 1) {
        run.weight.front() = 0.0;
    }
    return run;
}

// Same on a periodic lattice of n nodes; the run may wrap around.
Run1D periodic_run(double x0, double h, std::size_t n, double lo, double hi) {
    Run1D run;
    const double slack = kEdgeSlack * h;
    const auto m_lo = static_cast<long long>(std::ceil((lo - slack - x0) / h));
    const auto m_hi = static_cast<long long>(std::floor((hi + slack - x0) / h));
    if (m_hi < m_lo) {
        return run;
    }
    const auto count = static_cast<std::size_t>(m_hi - m_lo + 1);
    const auto nn = static_cast<long long>(n);
    if (count >= n) {
        // Region covers a full period: uniform weights, no end nodes.
        run.clipped = count > n || (hi - lo) > static_cast<double>(n) * h + slack;
        for (std::size_t m = 0; m < n; ++m) {
            run.index.push_back(m);
        }
        run.weight.assign(n, h);
        return run;
    }
    for (long long m = m_lo; m <= m_hi; ++m) {
        run.index.push_back(static_cast<std::size_t>(((m % nn) + nn) % nn));
    }
    run.weight.assign(run.index.size(), h);
    run.weight.front() *= 0.5;
    run.weight.back() *= 0.5;
    if (run.index.size() == 1) {
        run.weight.front() = 0.0;
    }
    return run;
}

RegionMask cylinder_mask(const Grid& grid, const Region& region) {
    const double r_lo = region.inner_radius();
    const double r_hi = region.outer_radius();
    const double z_lo = region.z_center - region.half_height();
    const double z_hi = region.z_center + region.half_height();

    const Run1D rr = bounded_run(grid.r_min(), grid.h_r(), grid.n_r(), r_lo, r_hi);
    const Run1D zz = grid.z_periodic()
                         ? periodic_run(grid.z_min(), grid.h_z(), grid.n_z(), z_lo, z_hi)
                         : bounded_run(grid.z_min(), grid.h_z(), grid.n_z(), z_lo, z_hi);

    RegionMask mask;
    mask.clipped = rr.clipped || zz.clipped;
    for (std::size_t a = 0; a < rr.index.size(); ++a) {
        const std::size_t i = rr.index[a];
        const double radial =
            region.measure == Measure::volume ? 2.0 * kPi * grid.r(i) * rr.weight[a] : rr.weight[a];
        for (std::size_t b = 0; b < zz.index.size(); ++b) {
            mask.nodes.push_back(grid.index(i, zz.index[b]));
            mask.weights.push_back(radial * zz.weight[b]);
        }
    }
    return mask;
}

RegionMask ball_mask(const Grid& grid, const Region& region) {
    const double rc = region.center.radius();
    const double zc = region.center.z();
    const double rho = region.radius;

    RegionMask mask;
    // Footprint of the ball in the meridional plane is the disc of radius rho
    // about (rc, zc); it is clipped when that disc leaves the grid.
    mask.clipped = rc - rho < grid.r_min() || rc + rho > grid.r_max();
    if (!grid.z_periodic()) {
        mask.clipped = mask.clipped || zc - rho < grid.z_min() || zc + rho > grid.z_max();
    } else {
        mask.clipped = mask.clipped || 2.0 * rho > grid.z_period();
    }

    const double cell = grid.h_r() * grid.h_z();
    for (std::size_t i = 0; i < grid.n_r(); ++i) {
        const double r = grid.r(i);
        for (std::size_t j = 0; j < grid.n_z(); ++j) {
            double dz = grid.z(j) - zc;
            if (grid.z_periodic()) {
                dz -= grid.z_period() * std::round(dz / grid.z_period());
            }
            const double dr = r - rc;
            if (dr * dr + dz * dz > rho * rho) {
                continue;
            }
            double weight = cell;
            if (region.measure == Measure::volume) {
                // Points of the circle (r, z) inside the ball satisfy
                // cos(theta) >= c; the circle meets the ball on an arc of
                // angular length 2 arccos(c).
                double arc = 2.0 * kPi;
                if (rc > 0.0) {
                    const double c = (r * r + rc * rc + dz * dz - rho * rho) / (2.0 * r * rc);
                    arc = 2.0 * std::acos(std::clamp(c, -1.0, 1.0));
                }
                weight *= r * arc;
            }
            mask.nodes.push_back(grid.index(i, j));
            mask.weights.push_back(weight);
        }
    }
    return mask;
}

}  // namespace

Grid::Grid(double r_min, double r_max, double z_min, double z_max, std::size_t n_r,
           std::size_t n_z, bool z_periodic, double unit_length)
    : r_min_(r_min),
      r_max_(r_max),
      z_min_(z_min),
      z_max_(z_max),
      n_r_(n_r),
      n_z_(n_z),
      z_periodic_(z_periodic),
      unit_length_(unit_length) {
    if (!(r_min > 0.0)) {
        throw std::invalid_argument("axis excluded: r_min must be positive");
    }
    if (!(r_max > r_min) || !(z_max > z_min)) {
        throw std::invalid_argument("grid extents must be positive");
    }
    if (n_r < 8 || n_z < 8) {
        throw std::invalid_argument("grid needs at least 8 nodes per direction");
    }
    if (!(unit_length > 0.0) || !std::isfinite(unit_length)) {
        throw std::invalid_argument("unit_length must be positive");
    }
    h_r_ = (r_max - r_min) / static_cast<double>(n_r - 1);
    h_z_ = (z_max - z_min) / static_cast<double>(z_periodic ? n_z : n_z - 1);
    if (!std::isfinite(h_r_) || !std::isfinite(h_z_) || !(h_r_ > 0.0) || !(h_z_ > 0.0)) {
        throw std::invalid_argument("grid spacing must be finite and positive");
    }
}

bool Grid::contains(double r, double z) const {
    const double sr = kEdgeSlack * h_r_;
    if (r < r_min_ - sr || r > r_max_ + sr) {
        return false;
    }
    if (z_periodic_) {
        return std::isfinite(z);
    }
    const double sz = kEdgeSlack * h_z_;
    return z >= z_min_ - sz && z <= z_max_ + sz;
}

Grid Grid::dilated(double factor) const {
    if (!(factor > 0.0)) {
        throw std::invalid_argument("dilation factor must be positive");
    }
    return Grid(r_min_ * factor, r_max_ * factor, z_min_ * factor, z_max_ * factor, n_r_, n_z_,
                z_periodic_, unit_length_ * factor);
}

Grid make_grid(double r_min, double r_max, double z_min, double z_max, std::size_t n_r,
               std::size_t n_z, bool z_periodic) {
    return Grid(r_min, r_max, z_min, z_max, n_r, n_z, z_periodic);
}

Region Region::annular_cylinder(double A, double B, double R, Measure measure, double z_center) {
    if (!(A > 0.0) || !(B > A) || !(R > 0.0)) {
        throw std::invalid_argument("annular cylinder needs 0 < A < B and R > 0");
    }
    Region region;
    region.kind = Kind::annular_cylinder;
    region.A = A;
    region.B = B;
    region.R = R;
    region.measure = measure;
    region.z_center = z_center;
    return region;
}

Region Region::parabolic(double A, double B, double S, double R, Measure measure,
                         double z_center) {
    if (!(S > 0.0)) {
        throw std::invalid_argument("parabolic region needs S > 0");
    }
    Region region = annular_cylinder(A, B, R, measure, z_center);
    region.kind = Kind::parabolic;
    region.S = S;
    return region;
}

Region Region::ball(const Point& center, double radius, Measure measure) {
    if (!(radius > 0.0)) {
        throw std::invalid_argument("ball radius must be positive");
    }
    Region region;
    region.kind = Kind::ball;
    region.center = center;
    region.radius = radius;
    region.measure = measure;
    return region;
}

double Region::exact_measure() const {
    if (kind == Kind::ball) {
        if (measure == Measure::volume) {
            return 4.0 / 3.0 * kPi * radius * radius * radius;
        }
        return kPi * radius * radius;
    }
    const double a = inner_radius();
    const double b = outer_radius();
    const double height = 2.0 * half_height();
    if (measure == Measure::volume) {
        return kPi * (b * b - a * a) * height;
    }
    return (b - a) * height;
}

std::string Region::describe() const {
    std::ostringstream out;
    out.precision(17);
    switch (kind) {
        case Kind::annular_cylinder:
            out << "C[" << inner_radius() << ";" << outer_radius() << "]@z=" << z_center;
            break;
        case Kind::parabolic:
            out << "P[" << inner_radius() << ";" << outer_radius() << ";" << S * R
                << "]@z=" << z_center;
            break;
        case Kind::ball:
            out << "B[r=" << center.radius() << ";z=" << center.z() << ";rho=" << radius << "]";
            break;
    }
    return out.str();
}

bool Region::operator==(const Region& other) const {
    return kind == other.kind && A == other.A && B == other.B && R == other.R && S == other.S &&
           z_center == other.z_center && center.x1 == other.center.x1 &&
           center.x2 == other.center.x2 && center.x3 == other.center.x3 &&
           radius == other.radius && measure == other.measure;
}

Region cylinder_c(double sigma, double scale, Measure measure, double z_center) {
    if (!(sigma > 5.0 / 8.0) || !(sigma < 5.0 / 4.0) || !(scale > 0.0)) {
        throw std::invalid_argument("C(sigma) needs 0 < 5 - 4 sigma < 4 sigma and scale > 0");
    }
    return Region::annular_cylinder(5.0 - 4.0 * sigma, 4.0 * sigma, scale, measure, z_center);
}

Region scale_region(const Region& region, double k) {
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw std::invalid_argument("scale factor must be positive");
    }
    Region out = region;
    out.z_center = region.z_center * k;
    if (region.kind == Region::Kind::ball) {
        out.center = {region.center.x1 * k, region.center.x2 * k, region.center.x3 * k};
        out.radius = region.radius * k;
    } else {
        // A, B, S are dimensionless; R carries the length (and, squared
        // with S, the time window).
        out.R = region.R * k;
    }
    return out;
}

double RegionMask::total_weight() const {
    double total = 0.0;
    for (double w : weights) {
        total += w;
    }
    return total;
}

RegionMask region_mask(const Grid& grid, const Region& region) {
    RegionMask mask = region.kind == Region::Kind::ball ? ball_mask(grid, region)
                                                          : cylinder_mask(grid, region);
    if (mask.nodes.empty()) {
        throw EmptyRegionError("region " + region.describe() + " contains no grid node");
    }
    return mask;
}

RegionMask grid_mask(const Grid& grid, Measure measure) {
    const Run1D rr = bounded_run(grid.r_min(), grid.h_r(), grid.n_r(), grid.r_min(), grid.r_max());
    const Run1D zz = grid.z_periodic()
                         ? periodic_run(grid.z_min(), grid.h_z(), grid.n_z(), grid.z_min(),
                                        grid.z_min() + grid.z_period())
                         : bounded_run(grid.z_min(), grid.h_z(), grid.n_z(), grid.z_min(),
                                       grid.z_max());
    RegionMask mask;
    for (std::size_t a = 0; a < rr.index.size(); ++a) {
        const std::size_t i = rr.index[a];
        const double radial =
            measure == Measure::volume ? 2.0 * kPi * grid.r(i) * rr.weight[a] : rr.weight[a];
        for (std::size_t b = 0; b < zz.index.size(); ++b) {
            mask.nodes.push_back(grid.index(i, zz.index[b]));
            mask.weights.push_back(radial * zz.weight[b]);
        }
    }
    return mask;
}

}  // namespace axiswirl
