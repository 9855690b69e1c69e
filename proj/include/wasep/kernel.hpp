#pragma once

namespace wasep {

/// V = 8 Gamma(3/2) cos(pi/4) / pi.
double kernel_V();

/// Volterra kernel of fractional Brownian motion with Hurst index 1/4:
///
///   K(t, s) = (t - s)^(-1/4) / (sqrt(V) Gamma(3/4)) F(1/4, -1/4; 3/4; 1 - t/s),
///
/// defined for 0 < s < t. Throws DomainError otherwise.
double kernel_K(double t, double s);

/// int_0^s K(t, u) K(s, u) du for 0 < s <= t, which equals the fBm
/// covariance. The integrable singularities at u = 0 and u = s are flattened
/// by u = w^4 on [0, s/2] and u = s - v^4 on [s/2, s]; each piece uses
/// adaptive Gauss-Kronrod quadrature. Throws QuadratureError when the
/// estimated error exceeds 1e-8.
double kernel_cov_integral(double t, double s);

}  // namespace wasep
