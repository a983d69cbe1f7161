#include "axiswirl/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "axiswirl/errors.hpp"

namespace axiswirl {

namespace {

void require_same_grid(const ScalarField& a, const ScalarField& b) {
    if (!(a.grid() == b.grid())) {
        throw std::invalid_argument("fields '" + a.name() + "' and '" + b.name() +
                                    "' live on different grids");
    }
}

// First derivative along one lattice direction. n nodes with spacing h,
// value(m) reads node m of the current line.
template <typename Read, typename Write>
void first_derivative_line(std::size_t n, double h, bool periodic, Read value, Write out) {
    const double inv2h = 0.5 / h;
    if (periodic) {
        for (std::size_t m = 0; m < n; ++m) {
            const std::size_t up = m + 1 == n ? 0 : m + 1;
            const std::size_t dn = m == 0 ? n - 1 : m - 1;
            out(m, (value(up) - value(dn)) * inv2h);
        }
        return;
    }
    out(0, (-3.0 * value(0) + 4.0 * value(1) - value(2)) * inv2h);
    for (std::size_t m = 1; m + 1 < n; ++m) {
        out(m, (value(m + 1) - value(m - 1)) * inv2h);
    }
    out(n - 1, (3.0 * value(n - 1) - 4.0 * value(n - 2) + value(n - 3)) * inv2h);
}

template <typename Read, typename Write>
void second_derivative_line(std::size_t n, double h, bool periodic, Read value, Write out) {
    const double invh2 = 1.0 / (h * h);
    if (periodic) {
        for (std::size_t m = 0; m < n; ++m) {
            const std::size_t up = m + 1 == n ? 0 : m + 1;
            const std::size_t dn = m == 0 ? n - 1 : m - 1;
            out(m, (value(up) - 2.0 * value(m) + value(dn)) * invh2);
        }
        return;
    }
    // Four-point one-sided stencil keeps second order at the ends.
    out(0, (2.0 * value(0) - 5.0 * value(1) + 4.0 * value(2) - value(3)) * invh2);
    for (std::size_t m = 1; m + 1 < n; ++m) {
        out(m, (value(m + 1) - 2.0 * value(m) + value(m - 1)) * invh2);
    }
    out(n - 1,
        (2.0 * value(n - 1) - 5.0 * value(n - 2) + 4.0 * value(n - 3) - value(n - 4)) * invh2);
}

template <typename LineOp>
ScalarField along_r(const ScalarField& f, LineOp op, const std::string& name) {
    const Grid& g = f.grid();
    ScalarField out(g, name);
    for (std::size_t j = 0; j < g.n_z(); ++j) {
        op(
            g.n_r(), g.h_r(), false, [&](std::size_t i) { return f(i, j); },
            [&](std::size_t i, double v) { out(i, j) = v; });
    }
    return out;
}

template <typename LineOp>
ScalarField along_z(const ScalarField& f, LineOp op, const std::string& name) {
    const Grid& g = f.grid();
    ScalarField out(g, name);
    for (std::size_t i = 0; i < g.n_r(); ++i) {
        op(
            g.n_z(), g.h_z(), g.z_periodic(), [&](std::size_t j) { return f(i, j); },
            [&](std::size_t j, double v) { out(i, j) = v; });
    }
    return out;
}

}  // namespace

ScalarField::ScalarField(Grid grid, std::string name)
    : grid_(std::move(grid)), values_(grid_.size(), 0.0), name_(std::move(name)) {}

ScalarField::ScalarField(Grid grid, std::vector<double> values, std::string name)
    : grid_(std::move(grid)), values_(std::move(values)), name_(std::move(name)) {
    if (values_.size() != grid_.size()) {
        throw std::invalid_argument("field '" + name_ + "' does not match its grid shape");
    }
}

ScalarField ScalarField::from_function(const Grid& grid,
                                       const std::function<double(double, double)>& f,
                                       std::string name) {
    ScalarField out(grid, std::move(name));
    for (std::size_t i = 0; i < grid.n_r(); ++i) {
        for (std::size_t j = 0; j < grid.n_z(); ++j) {
            out(i, j) = f(grid.r(i), grid.z(j));
        }
    }
    return out;
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double v : values_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

bool ScalarField::all_finite() const {
    for (double v : values_) {
        if (!std::isfinite(v)) {
            return false;
        }
    }
    return true;
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
    require_same_grid(*this, other);
    for (std::size_t n = 0; n < values_.size(); ++n) {
        values_[n] += other.values_[n];
    }
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
    require_same_grid(*this, other);
    for (std::size_t n = 0; n < values_.size(); ++n) {
        values_[n] -= other.values_[n];
    }
    return *this;
}

ScalarField& ScalarField::operator*=(double s) {
    for (double& v : values_) {
        v *= s;
    }
    return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

ScalarField hadamard(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a, b);
    ScalarField out(a.grid(), a.name() + "*" + b.name());
    for (std::size_t n = 0; n < out.grid().size(); ++n) {
        out[n] = a[n] * b[n];
    }
    return out;
}

ScalarField times_r_power(const ScalarField& f, int power) {
    const Grid& g = f.grid();
    ScalarField out(g, f.name());
    for (std::size_t i = 0; i < g.n_r(); ++i) {
        const double w = std::pow(g.r(i), power);
        for (std::size_t j = 0; j < g.n_z(); ++j) {
            out(i, j) = w * f(i, j);
        }
    }
    return out;
}

FlowState FlowState::zero(const Grid& grid, double t) {
    return FlowState{t,
                     ScalarField(grid, "Gamma"),
                     ScalarField(grid, "Omega"),
                     ScalarField(grid, "L_theta"),
                     ScalarField(grid, "v_r"),
                     ScalarField(grid, "v_theta"),
                     ScalarField(grid, "v_z"),
                     ScalarField(grid, "omega_theta"),
                     true};
}

std::vector<const ScalarField*> FlowState::fields() const {
    return {&gamma, &omega, &stream, &v_r, &v_theta, &v_z, &omega_theta};
}

std::vector<ScalarField*> FlowState::fields() {
    return {&gamma, &omega, &stream, &v_r, &v_theta, &v_z, &omega_theta};
}

const std::vector<std::string>& state_field_names() {
    static const std::vector<std::string> names{"Gamma", "Omega",   "L_theta",    "v_r",
                                                "v_theta", "v_z", "omega_theta"};
    return names;
}

ScalarField ddr(const ScalarField& f) {
    return along_r(
        f, [](auto... a) { first_derivative_line(a...); }, "d_r " + f.name());
}

ScalarField ddz(const ScalarField& f) {
    return along_z(
        f, [](auto... a) { first_derivative_line(a...); }, "d_z " + f.name());
}

ScalarField d2dr2(const ScalarField& f) {
    return along_r(
        f, [](auto... a) { second_derivative_line(a...); }, "d_rr " + f.name());
}

ScalarField d2dz2(const ScalarField& f) {
    return along_z(
        f, [](auto... a) { second_derivative_line(a...); }, "d_zz " + f.name());
}

ScalarField cyl_laplacian(const ScalarField& f) {
    ScalarField out = d2dr2(f);
    out += times_r_power(ddr(f), -1);
    out += d2dz2(f);
    out.rename("lap " + f.name());
    return out;
}

ScalarField divergence_cyl(const ScalarField& v_r, const ScalarField& v_z) {
    require_same_grid(v_r, v_z);
    ScalarField out = times_r_power(ddr(times_r_power(v_r, 1)), -1);
    out += ddz(v_z);
    out.rename("div");
    return out;
}

ScalarField curl_theta(const ScalarField& v_r, const ScalarField& v_z) {
    require_same_grid(v_r, v_z);
    ScalarField out = ddz(v_r) - ddr(v_z);
    out.rename("omega_theta");
    return out;
}

ScalarField curl_r(const ScalarField& v_theta) {
    ScalarField out = -1.0 * ddz(v_theta);
    out.rename("omega_r");
    return out;
}

ScalarField curl_z(const ScalarField& v_theta) {
    ScalarField out = ddr(v_theta) + times_r_power(v_theta, -1);
    out.rename("omega_z");
    return out;
}

double norm(const ScalarField& f, const RegionMask& mask, double p) {
    if (mask.nodes.empty()) {
        throw EmptyRegionError("norm over an empty region");
    }
    if (!(p >= 1.0)) {
        throw std::invalid_argument("norm exponent must be >= 1");
    }
    if (std::isinf(p)) {
        double m = 0.0;
        for (std::size_t n : mask.nodes) {
            m = std::max(m, std::abs(f[n]));
        }
        return m;
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < mask.nodes.size(); ++k) {
        const double a = std::abs(f[mask.nodes[k]]);
        sum += mask.weights[k] * (p == 2.0 ? a * a : std::pow(a, p));
    }
    return p == 2.0 ? std::sqrt(sum) : std::pow(sum, 1.0 / p);
}

double norm(const ScalarField& f, const Region& region, double p) {
    return norm(f, region_mask(f.grid(), region), p);
}

double vector_norm(std::span<const ScalarField* const> components, const RegionMask& mask) {
    if (mask.nodes.empty()) {
        throw EmptyRegionError("norm over an empty region");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < mask.nodes.size(); ++k) {
        double sq = 0.0;
        for (const ScalarField* c : components) {
            const double v = (*c)[mask.nodes[k]];
            sq += v * v;
        }
        sum += mask.weights[k] * sq;
    }
    return std::sqrt(sum);
}

std::optional<double> interpolate(const ScalarField& f, double r, double z) {
    const Grid& g = f.grid();
    if (!g.contains(r, z)) {
        return std::nullopt;
    }
    const double sr = (r - g.r_min()) / g.h_r();
    const auto i = static_cast<std::size_t>(
        std::clamp(std::floor(sr), 0.0, static_cast<double>(g.n_r() - 2)));
    const double a = std::clamp(sr - static_cast<double>(i), 0.0, 1.0);

    std::size_t j0 = 0;
    std::size_t j1 = 0;
    double b = 0.0;
    if (g.z_periodic()) {
        double sz = (z - g.z_min()) / g.h_z();
        const double n = static_cast<double>(g.n_z());
        sz -= n * std::floor(sz / n);
        const double fl = std::min(std::floor(sz), n - 1.0);
        j0 = static_cast<std::size_t>(fl);
        j1 = j0 + 1 == g.n_z() ? 0 : j0 + 1;
        b = std::clamp(sz - fl, 0.0, 1.0);
    } else {
        const double sz = (z - g.z_min()) / g.h_z();
        j0 = static_cast<std::size_t>(
            std::clamp(std::floor(sz), 0.0, static_cast<double>(g.n_z() - 2)));
        j1 = j0 + 1;
        b = std::clamp(sz - static_cast<double>(j0), 0.0, 1.0);
    }
    return (1.0 - a) * ((1.0 - b) * f(i, j0) + b * f(i, j1)) +
           a * ((1.0 - b) * f(i + 1, j0) + b * f(i + 1, j1));
}

void require_finite(const ScalarField& f) {
    if (!f.all_finite()) {
        throw Error("non-finite value in field '" + f.name() + "'");
    }
}

}  // namespace axiswirl
