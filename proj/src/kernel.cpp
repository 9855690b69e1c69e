#include "wasep/kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wasep/errors.hpp"
#include "wasep/special.hpp"

namespace wasep {

namespace {

double kernel_prefactor() {
    static const double inv = 1.0 / (std::sqrt(kernel_V()) * std::tgamma(0.75));
    return inv;
}

constexpr double kAbsTolerance = 1e-8;

}  // namespace

double kernel_V() {
    return 8.0 * std::tgamma(1.5) * std::cos(0.25 * std::numbers::pi) / std::numbers::pi;
}

double kernel_K(double t, double s) {
    if (!(s > 0.0 && s < t)) throw DomainError("kernel_K: requires 0 < s < t");
    return kernel_prefactor() * std::pow(t - s, -0.25) * hypergeom_F(0.25, -0.25, 0.75, 1.0 - t / s);
}

double kernel_cov_integral(double t, double s) {
    if (!(s > 0.0 && s <= t)) throw DomainError("kernel_cov_integral: requires 0 < s <= t");
    using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;

    // Kernel values at u with s - u = d > 0 supplied separately so that the
    // endpoint u = s never loses precision.
    auto product = [t, s](double u, double d) {
        // Below 1e-200 the integrand has long since vanished and 1 - t/u
        // would overflow.
        if (u <= 1e-200 || d <= 0.0) return 0.0;
        const double first = (t == s) ? kernel_prefactor() * std::pow(d, -0.25) *
                                            hypergeom_F(0.25, -0.25, 0.75, 1.0 - t / u)
                                      : kernel_K(t, u);
        const double second = kernel_prefactor() * std::pow(d, -0.25) * hypergeom_F(0.25, -0.25, 0.75, 1.0 - s / u);
        return first * second;
    };

    const double edge = std::pow(0.5 * s, 0.25);
    // u = w^4, du = 4 w^3 dw.
    auto near_origin = [&](double w) {
        const double w2 = w * w;
        const double u = w2 * w2;
        return 4.0 * w2 * w * product(u, s - u);
    };
    // u = s - v^4, du = 4 v^3 dv.
    auto near_end = [&](double v) {
        const double v2 = v * v;
        const double d = v2 * v2;
        return 4.0 * v2 * v * product(s - d, d);
    };

    double err_a = 0.0;
    double err_b = 0.0;
    const double a = Quad::integrate(near_origin, 0.0, edge, 20, 1e-12, &err_a);
    const double b = Quad::integrate(near_end, 0.0, edge, 20, 1e-12, &err_b);
    const double value = a + b;
    const double err = err_a + err_b;
    if (!(err <= kAbsTolerance) || !std::isfinite(value))
        throw QuadratureError("kernel_cov_integral: estimated error " + std::to_string(err) + " above tolerance");
    return value;
}

}  // namespace wasep
