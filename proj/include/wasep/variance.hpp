#pragma once

#include <string_view>

namespace wasep {

/// Asymmetry regimes: beta < 1 (sub), beta = 1 (critical), beta > 1 (super).
enum class Regime { sub, critical, super };

Regime regime_for_beta(double beta) noexcept;
std::string_view to_string(Regime regime) noexcept;

/// Parameters of the limiting current covariance.
struct VarianceSpec {
    Regime regime = Regime::super;
    double alpha = 0.0;
    double rho = 0.5;

    VarianceSpec() = default;
    /// Throws DomainError unless alpha >= 0 and rho in [0, 1].
    VarianceSpec(Regime regime, double alpha, double rho);
    static VarianceSpec from_beta(double beta, double alpha, double rho) {
        return VarianceSpec(regime_for_beta(beta), alpha, rho);
    }

    double chi() const noexcept { return rho * (1.0 - rho); }
    /// Drift magnitude m = alpha |1 - 2 rho|.
    double drift() const noexcept;
    /// Signed transport velocity alpha (1 - 2 rho).
    double velocity() const noexcept { return alpha * (1.0 - 2.0 * rho); }
    /// Sub regime at rho = 1/2: the covariance vanishes identically.
    bool degenerate() const noexcept;
};

/// f(t) = m t / 2 + E[(B_t - m t)_+]
///      = m t / 2 + sqrt(t) [phi(m sqrt t) - m sqrt t (1 - Phi(m sqrt t))].
double f_drift(double t, double m);

/// Limiting covariance a(t, s) of the centered current scaled by sqrt(n):
///   sub:      chi m min(t, s)
///   critical: chi (f(t) + f(s) - f(|t - s|))
///   super:    chi (sqrt t + sqrt s - sqrt|t - s|) / sqrt(2 pi)
double variance_a(double t, double s, const VarianceSpec& spec);

/// Covariance of fractional Brownian motion with Hurst index 1/4.
double fbm_cov(double t, double s);

}  // namespace wasep
