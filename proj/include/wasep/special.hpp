#pragma once

namespace wasep {

double normal_pdf(double x) noexcept;
double normal_cdf(double x) noexcept;

/// 1/Gamma(x); zero at the poles x = 0, -1, -2, ...
double reciprocal_gamma(double x) noexcept;

/// Gauss hypergeometric function 2F1(a, b; c; z) for real z < 1.
///
/// Branches:
///  - |z| <= 1/2: direct series;
///  - z < -1/2: Pfaff transformation
///        F(a, b; c; z) = (1 - z)^(-a) F(a, c - b; c; z / (z - 1)),
///    whose argument lies in (1/3, 1);
///  - argument in (0.9, 1) after the above: the connection formula around
///    w = 1 (requires a non-integer c - a - b for the function evaluated).
/// Terminating series (a or b a non-positive integer) are summed directly.
///
/// Series stop at a relative term below 1e-15 with a hard cap of 10^4 terms.
/// Throws DomainError for z >= 1, non-finite input, c a non-positive integer,
/// or an unsupported integer parameter combination near w = 1.
double hypergeom_F(double a, double b, double c, double z);

}  // namespace wasep
