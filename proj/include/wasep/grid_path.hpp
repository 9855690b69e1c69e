#pragma once

#include <vector>

namespace wasep {

/// Real path sampled on a strictly increasing time grid and read as its
/// piecewise-linear interpolant.
struct GridPath {
    std::vector<double> times;
    std::vector<double> values;

    GridPath() = default;
    /// Throws DomainError on size mismatch, non-increasing or negative times,
    /// or non-finite values.
    GridPath(std::vector<double> times, std::vector<double> values);

    std::size_t size() const noexcept { return times.size(); }

    /// Linear interpolation; h(0) = 0 is assumed left of the first sample
    /// when the first time is positive. Throws DomainError beyond the last time.
    double at(double t) const;

    /// Uniform spacing if the grid is uniform to 1e-9 relative, else 0.
    double uniform_step() const noexcept;
};

}  // namespace wasep
