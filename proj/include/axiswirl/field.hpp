#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "axiswirl/geometry.hpp"

namespace axiswirl {

/// Axisymmetric scalar sampled on the nodes of a Grid.
class ScalarField {
public:
    ScalarField(Grid grid, std::string name);
    ScalarField(Grid grid, std::vector<double> values, std::string name);

    static ScalarField from_function(const Grid& grid, const std::function<double(double, double)>& f,
                                     std::string name);

    const Grid& grid() const { return grid_; }
    const std::string& name() const { return name_; }
    void rename(std::string name) { name_ = std::move(name); }

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    double operator()(std::size_t i, std::size_t j) const { return values_[grid_.index(i, j)]; }
    double& operator()(std::size_t i, std::size_t j) { return values_[grid_.index(i, j)]; }
    double operator[](std::size_t n) const { return values_[n]; }
    double& operator[](std::size_t n) { return values_[n]; }

    double max_abs() const;
    bool all_finite() const;

    ScalarField& operator+=(const ScalarField& other);
    ScalarField& operator-=(const ScalarField& other);
    ScalarField& operator*=(double s);

private:
    Grid grid_;
    std::vector<double> values_;
    std::string name_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);
/// Pointwise product.
ScalarField hadamard(const ScalarField& a, const ScalarField& b);
/// Pointwise r^power * f.
ScalarField times_r_power(const ScalarField& f, int power);

/// Prognostic (Gamma, Omega) with the fields derived from them.
///
/// gamma = r v_theta, omega = omega_theta / r. When derived_fresh is set,
/// omega_theta = r omega, stream solves the stream equation for omega_theta,
/// (v_r, v_z) come from stream and v_theta = gamma / r.
struct FlowState {
    double t = 0.0;
    ScalarField gamma;
    ScalarField omega;
    ScalarField stream;
    ScalarField v_r;
    ScalarField v_theta;
    ScalarField v_z;
    ScalarField omega_theta;
    bool derived_fresh = false;

    /// All-zero state on grid at time t.
    static FlowState zero(const Grid& grid, double t = 0.0);

    const Grid& grid() const { return gamma.grid(); }
    /// Fields in snapshot order.
    std::vector<const ScalarField*> fields() const;
    std::vector<ScalarField*> fields();
};

/// Field names in snapshot order.
const std::vector<std::string>& state_field_names();

// Centered second-order differences in the interior, one-sided second order
// at non-periodic boundaries, wrap-around in periodic z.
ScalarField ddr(const ScalarField& f);
ScalarField ddz(const ScalarField& f);
ScalarField d2dr2(const ScalarField& f);
ScalarField d2dz2(const ScalarField& f);

/// D_rr f + (1/r) D_r f + D_zz f.
ScalarField cyl_laplacian(const ScalarField& f);
/// (1/r) D_r(r v_r) + D_z v_z.
ScalarField divergence_cyl(const ScalarField& v_r, const ScalarField& v_z);
/// omega_theta = D_z v_r - D_r v_z.
ScalarField curl_theta(const ScalarField& v_r, const ScalarField& v_z);
/// omega_r = -D_z v_theta.
ScalarField curl_r(const ScalarField& v_theta);
/// omega_z = D_r v_theta + v_theta / r.
ScalarField curl_z(const ScalarField& v_theta);

/// Weighted L^p norm over a region mask; p = infinity gives the max.
double norm(const ScalarField& f, const RegionMask& mask, double p);
double norm(const ScalarField& f, const Region& region, double p);
/// L^2 norm of a vector field given by its components.
double vector_norm(std::span<const ScalarField* const> components, const RegionMask& mask);

/// Bilinear interpolation in (r, z); nullopt outside the grid.
std::optional<double> interpolate(const ScalarField& f, double r, double z);

/// Throws if any value is NaN or infinite.
void require_finite(const ScalarField& f);

}  // namespace axiswirl
