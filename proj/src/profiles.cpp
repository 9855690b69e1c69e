#include "wasep/profiles.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wasep/errors.hpp"

namespace wasep {

namespace {

// Integral of exp(-1/(1 - x^2)) over (-1, 1).
double bump_mass() {
    static const double mass = [] {
        auto f = [](double x) { return std::exp(-1.0 / (1.0 - x * x)); };
        return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, -1.0, 1.0, 20, 1e-15);
    }();
    return mass;
}

}  // namespace

double ramp(double u, double l) {
    if (u < 0.0 || u > l) return 0.0;
    return 1.0 - u / l;
}

double bump(double y, double width) {
    const double x = 2.0 * y / width;
    if (x <= -1.0 || x >= 1.0) return 0.0;
    return 2.0 / (width * bump_mass()) * std::exp(-1.0 / (1.0 - x * x));
}

double smooth_ramp_width(double l) {
    if (!(l > 0.0)) throw DomainError("smooth_ramp: l must be positive");
    return 1.0 / l;
}

double smooth_ramp(double u, double l) {
    const double eps = smooth_ramp_width(l);
    const double half = 0.5 * eps;
    const bool near_jump = std::fabs(u) < half;
    const bool near_kink = std::fabs(u - l) < half;
    if (!near_jump && !near_kink) return ramp(u, l);

    // Convolution over the bump window, split where the ramp is not smooth.
    auto integrand = [&](double y) { return bump(y, eps) * ramp(u - y, l); };
    double cuts[4] = {-half, half, u, u - l};
    std::sort(cuts, cuts + 4);
    double total = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double a = std::max(cuts[i], -half);
        const double b = std::min(cuts[i + 1], half);
        if (b > a)
            total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, a, b, 8, 1e-12);
    }
    return total;
}

double gaussian_bump(double u, double center, double width) {
    const double z = (u - center) / width;
    return std::exp(-0.5 * z * z);
}

}  // namespace wasep
