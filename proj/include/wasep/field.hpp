#pragma once

#include <functional>
#include <string>

#include "wasep/process.hpp"

namespace wasep {

/// Test function on macroscopic space with declared support [lo, hi].
struct TestFunction {
    std::function<double(double)> fn;
    double lo = 0.0;
    double hi = 0.0;
    std::string name;

    double operator()(double u) const { return fn(u); }

    static TestFunction ramp(double l);
    static TestFunction smooth_ramp(double l);
    /// Gaussian profile truncated at center +- 8 width.
    static TestFunction gaussian_bump(double center, double width);
};

/// a_n = n^exponent, exponent in (1/2, 1).
double default_a_n(int n, double exponent = 0.75);

/// Y^n(H) = n^(-1/2) sum_x (eta_x - rho) H(x/n) over sites in the support of H.
/// Throws RingBreach when the support leaves (-L/(2n), L/(2n)).
double fluctuation_field(const Configuration& config, const TestFunction& H, const ProcessParams& params);

/// <mu^n, H> = a_n^(-1) sum_x (eta_x - rho) H(x/n). Throws DomainError for a_n <= 0.
double rescaled_field(const Configuration& config, const TestFunction& H, const ProcessParams& params,
                      double a_n);

}  // namespace wasep
