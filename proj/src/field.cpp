#include "wasep/field.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "wasep/errors.hpp"
#include "wasep/profiles.hpp"

namespace wasep {

namespace {

std::string label(const char* kind, double l) {
    std::ostringstream os;
    os << kind << "_" << l;
    return os.str();
}

}  // namespace

TestFunction TestFunction::ramp(double l) {
    if (!(l > 0.0)) throw DomainError("ramp: l must be positive");
    return {[l](double u) { return wasep::ramp(u, l); }, 0.0, l, label("ramp", l)};
}

TestFunction TestFunction::smooth_ramp(double l) {
    const double half = 0.5 * smooth_ramp_width(l);
    return {[l](double u) { return wasep::smooth_ramp(u, l); }, -half, l + half,
            label("smooth_ramp", l)};
}

TestFunction TestFunction::gaussian_bump(double center, double width) {
    if (!(width > 0.0)) throw DomainError("gaussian_bump: width must be positive");
    return {[center, width](double u) { return wasep::gaussian_bump(u, center, width); }, center - 8.0 * width,
            center + 8.0 * width, "gaussian_bump"};
}

double default_a_n(int n, double exponent) {
    if (!(exponent > 0.5 && exponent < 1.0)) throw DomainError("a_n exponent must lie in (1/2, 1)");
    return std::pow(static_cast<double>(n), exponent);
}

namespace {

double centered_sum(const Configuration& config, const TestFunction& H, const ProcessParams& params) {
    const double n = params.n();
    const double window = static_cast<double>(config.size()) / (2.0 * n);
    if (!(H.lo > -window && H.hi < window))
        throw RingBreach("test function support [" + std::to_string(H.lo) + ", " + std::to_string(H.hi) +
                         "] exceeds the ring window");
    const auto first = static_cast<std::int64_t>(std::ceil(H.lo * n));
    const auto last = static_cast<std::int64_t>(std::floor(H.hi * n));
    const double rho = params.rho();
    double sum = 0.0;
    for (std::int64_t x = first; x <= last; ++x) {
        const double h = H(static_cast<double>(x) / n);
        if (h != 0.0) sum += (config.eta(x) - rho) * h;
    }
    return sum;
}

}  // namespace

double fluctuation_field(const Configuration& config, const TestFunction& H, const ProcessParams& params) {
    return centered_sum(config, H, params) / std::sqrt(static_cast<double>(params.n()));
}

double rescaled_field(const Configuration& config, const TestFunction& H, const ProcessParams& params,
                      double a_n) {
    if (!(a_n > 0.0)) throw DomainError("rescaled_field: a_n must be positive");
    return centered_sum(config, H, params) / a_n;
}

}  // namespace wasep
