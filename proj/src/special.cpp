#include "wasep/special.hpp"

#include <cmath>
#include <numbers>

#include "wasep/errors.hpp"

namespace wasep {

namespace {

constexpr double kSeriesTolerance = 1e-15;
constexpr int kSeriesCap = 10000;
constexpr double kDirectLimit = 0.9;

bool non_positive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

bool integer_valued(double x) { return x == std::round(x); }

double series(double a, double b, double c, double z) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < kSeriesCap; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum += term;
        if (term == 0.0) return sum;
        if (std::fabs(term) <= kSeriesTolerance * std::fabs(sum)) return sum;
    }
    throw DomainError("hypergeom_F: series did not converge within the term cap");
}

// F(a, b; c; w) for w in (0, 1) via A&S 15.3.6 when w is close to 1. The
// complement x = 1 - w is passed separately to keep its relative precision.
double near_one(double a, double b, double c, double w, double x) {
    if (w <= kDirectLimit) return series(a, b, c, w);
    const double s = c - a - b;
    if (integer_valued(s))
        throw DomainError("hypergeom_F: integer c - a - b is not supported close to the unit argument");
    const double gc = std::tgamma(c);
    const double first = gc * std::tgamma(s) * reciprocal_gamma(c - a) * reciprocal_gamma(c - b) *
                         series(a, b, 1.0 - s, x);
    const double second = std::pow(x, s) * gc * std::tgamma(-s) * reciprocal_gamma(a) * reciprocal_gamma(b) *
                          series(c - a, c - b, 1.0 + s, x);
    return first + second;
}

}  // namespace

double normal_pdf(double x) noexcept {
    return std::exp(-0.5 * x * x) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2);
}

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double reciprocal_gamma(double x) noexcept {
    if (non_positive_integer(x)) return 0.0;
    return 1.0 / std::tgamma(x);
}

double hypergeom_F(double a, double b, double c, double z) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(z))
        throw DomainError("hypergeom_F: non-finite argument");
    if (non_positive_integer(c)) throw DomainError("hypergeom_F: c is a non-positive integer");
    if (!(z < 1.0)) throw DomainError("hypergeom_F: only z < 1 is supported");

    if (non_positive_integer(a) || non_positive_integer(b)) return series(a, b, c, z);
    if (std::fabs(z) <= 0.5) return series(a, b, c, z);
    if (z > 0.0) return near_one(a, b, c, z, 1.0 - z);

    // Pfaff: z in (-inf, -1/2) maps to w = z/(z-1) in (1/3, 1).
    const double w = z / (z - 1.0);
    return std::pow(1.0 - z, -a) * near_one(a, c - b, c, w, 1.0 / (1.0 - z));
}

}  // namespace wasep
