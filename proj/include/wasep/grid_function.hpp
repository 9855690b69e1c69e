#pragma once

#include <functional>
#include <vector>

namespace wasep {

/// Piecewise-linear function on a uniform grid x_i = origin + i step,
/// i = 0..size-1, extended by zero outside [x_0, x_{size-1}]. The end values
/// may be non-zero, in which case the function jumps there.
class GridFunction {
public:
    GridFunction() = default;
    /// Throws DomainError for step <= 0, fewer than two nodes, or non-finite data.
    GridFunction(double origin, double step, std::vector<double> values);

    /// Samples f on [lo, hi] with the largest uniform step not above `max_step`.
    static GridFunction sample(const std::function<double(double)>& f, double lo, double hi, double max_step);
    static GridFunction zero();

    double origin() const noexcept { return origin_; }
    double step() const noexcept { return step_; }
    double lo() const noexcept { return origin_; }
    double hi() const noexcept { return origin_ + step_ * static_cast<double>(values_.size() - 1); }
    std::size_t size() const noexcept { return values_.size(); }
    const std::vector<double>& values() const noexcept { return values_; }
    double node(std::size_t i) const noexcept { return origin_ + step_ * static_cast<double>(i); }

    double operator()(double u) const noexcept;
    /// Slope on the cell containing u; 0 outside the support.
    double slope(double u) const noexcept;

    /// Exact integral of the interpolant over [a, b]; negative when a > b.
    double integral(double a, double b) const noexcept;
    double integral() const noexcept { return integral(lo(), hi()); }
    /// Exact L2 norm squared.
    double squared_norm() const noexcept;
    /// Exact integral of the squared cellwise slope (jumps at the ends excluded).
    double gradient_squared_norm() const noexcept;

    GridFunction scaled(double c) const;
    bool same_grid(const GridFunction& other) const noexcept;

private:
    double origin_ = 0.0;
    double step_ = 1.0;
    std::vector<double> values_;
};

/// Space-time function G(t, u): spatial slices on a common grid at increasing
/// times t_0 = 0 < ... < t_K, linear in t between slices.
class SpaceTimeGridFunction {
public:
    SpaceTimeGridFunction() = default;
    /// Throws DomainError unless times start at 0, increase strictly, and
    /// every slice shares the same spatial grid.
    SpaceTimeGridFunction(std::vector<double> times, std::vector<GridFunction> slices);

    static SpaceTimeGridFunction constant(const GridFunction& g, double horizon);

    const std::vector<double>& times() const noexcept { return times_; }
    const std::vector<GridFunction>& slices() const noexcept { return slices_; }
    double horizon() const noexcept { return times_.empty() ? 0.0 : times_.back(); }

    /// Spatial slice at time t in [0, horizon], interpolated linearly in t.
    GridFunction at(double t) const;
    /// Exact integral over [0, horizon] x R of (d/du G)^2 for the space-time
    /// interpolant.
    double dirichlet_form() const noexcept;

private:
    std::vector<double> times_;
    std::vector<GridFunction> slices_;
};

/// Default spatial step for grid test functions.
inline constexpr double kDefaultGridStep = 1.0 / 64.0;

/// G_l sampled on [0, l] at step 1/64 (exact representation).
GridFunction ramp_G(int l);
/// Smoothed ramp sampled on its support at step min(1/64, 1/(4l)).
GridFunction smooth_ramp_G(int l);
/// Gaussian profile truncated at center +- 8 width, step min(1/64, width/16).
GridFunction gaussian_bump_G(double center, double width, double amplitude = 1.0);

}  // namespace wasep
