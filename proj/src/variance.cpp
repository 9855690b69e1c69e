#include "wasep/variance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wasep/errors.hpp"
#include "wasep/special.hpp"

namespace wasep {

Regime regime_for_beta(double beta) noexcept {
    if (beta < 1.0) return Regime::sub;
    if (beta > 1.0) return Regime::super;
    return Regime::critical;
}

std::string_view to_string(Regime regime) noexcept {
    switch (regime) {
        case Regime::sub: return "sub";
        case Regime::critical: return "critical";
        case Regime::super: return "super";
    }
    return "unknown";
}

VarianceSpec::VarianceSpec(Regime regime_, double alpha_, double rho_) : regime(regime_), alpha(alpha_), rho(rho_) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be non-negative");
    if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("rho must lie in [0, 1]");
}

double VarianceSpec::drift() const noexcept { return alpha * std::fabs(1.0 - 2.0 * rho); }

bool VarianceSpec::degenerate() const noexcept { return regime == Regime::sub && rho == 0.5; }

double f_drift(double t, double m) {
    if (!(t >= 0.0)) throw DomainError("f_drift: t must be non-negative");
    if (!(m >= 0.0)) throw DomainError("f_drift: m must be non-negative");
    if (t == 0.0) return 0.0;
    const double root = std::sqrt(t);
    const double c = m * root;
    return 0.5 * m * t + root * (normal_pdf(c) - c * normal_cdf(-c));
}

double variance_a(double t, double s, const VarianceSpec& spec) {
    if (!(t >= 0.0 && s >= 0.0)) throw DomainError("variance_a: times must be non-negative");
    const double chi = spec.chi();
    switch (spec.regime) {
        case Regime::sub:
            return chi * spec.drift() * std::min(t, s);
        case Regime::critical: {
            const double m = spec.drift();
            return chi * (f_drift(t, m) + f_drift(s, m) - f_drift(std::fabs(t - s), m));
        }
        case Regime::super:
            return chi * (std::sqrt(t) + std::sqrt(s) - std::sqrt(std::fabs(t - s))) *
                   (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2);
    }
    return 0.0;
}

double fbm_cov(double t, double s) {
    if (!(t >= 0.0 && s >= 0.0)) throw DomainError("fbm_cov: times must be non-negative");
    return 0.5 * (std::sqrt(t) + std::sqrt(s) - std::sqrt(std::fabs(t - s)));
}

}  // namespace wasep
