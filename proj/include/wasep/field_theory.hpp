#pragma once

#include "wasep/grid_function.hpp"
#include "wasep/variance.hpp"

namespace wasep {

/// <T_t G, G> for the heat semigroup of (1/2) Laplacian; t = 0 gives <G, G>.
/// Exact for the piecewise-linear G up to the quadrature of the Gaussian
/// against the cell overlap polynomials (error far below 1e-8).
double heat_semigroup_inner(const GridFunction& G, double t);

/// Same with the Gaussian kernel recentred at -velocity * t.
double drifted_semigroup_inner(const GridFunction& G, double t, double velocity);

/// int G(u + shift) G(u) du, exact.
double translation_inner(const GridFunction& G, double shift);

/// Sign applied to alpha (1 - 2 rho) r when recentring the critical-regime
/// kernel. Self-pairings <T_r G, G> do not depend on it because the
/// autocorrelation of G is even; it is kept explicit and tested.
inline constexpr double kCriticalRecentringSign = -1.0;

/// <P_r G, G> for the stationary limit field in the regime of `spec`:
/// heat (super), drifted heat (critical), pure translation (sub).
double field_semigroup_inner(const GridFunction& G, double r, const VarianceSpec& spec);

/// Cov(Y_t(G) - Y_0(G), Y_s(G) - Y_0(G))
///   = chi [<G,G> + <P_|t-s| G,G> - <P_t G,G> - <P_s G,G>].
double field_cov_increment(const GridFunction& G, double t, double s, const VarianceSpec& spec);

/// V_t(u) = P(B_t + u >= 0) - 1{u >= 0}.
double V_t(double t, double u);
/// R_t(u) = P(B_t >= -u - velocity t) - 1{u >= 0}.
double R_t(double t, double u, double velocity);

/// Macroscopic current across the origin, int_0^inf [mu(t,u) - phi(u)] du,
/// for the path driven by initial profile phi and forcing G:
///   sub:      int_{-v t}^0 phi, v = alpha (1 - 2 rho); G is ignored;
///   super:    int phi V_t + int_0^t int dG/du(s,u) g_{t-s}(u) du ds;
///   critical: int phi R_t + int_0^t int dG/du(s,u) g_{t-s}(u + v (t-s)) du ds.
/// A null G means no forcing. The spatial derivative of G is its cellwise
/// slope, so G is expected to vanish at the ends of its grid.
double macroscopic_current(const GridFunction& phi, const SpaceTimeGridFunction* G, double t,
                           const VarianceSpec& spec);

}  // namespace wasep
