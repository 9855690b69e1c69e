#pragma once

#include <vector>

#include <Eigen/Dense>

#include "wasep/covariance.hpp"
#include "wasep/grid_function.hpp"
#include "wasep/grid_path.hpp"
#include "wasep/variance.hpp"

namespace wasep {

/// Throws DegenerateRegime for rho in {0, 1} or for the sub regime at rho = 1/2.
void require_rate_regime(const VarianceSpec& spec);

/// (1/2) r^T A^{-1} r. Throws SingularMatrix when A has no triangular factor.
double rate_finite_dim(const Eigen::VectorXd& r, const CovarianceMatrix& A);

/// ||h'||^2 / (2 chi alpha |1 - 2 rho|) for the piecewise-linear interpolant
/// of h (with h(0) = 0 when the first time is positive).
double rate_path_sub(const GridPath& h, const VarianceSpec& spec);

/// Uniform midpoint grid s_j = (j + 1/2) T / cells.
std::vector<double> midpoint_grid(double horizon, int cells);

/// Path h(t_i) = int_0^{t_i} K(t_i, s) h'(s) ds at t_i = i D, i = 0..N, from
/// h' given at the midpoints (j + 1/2) D, using the midpoint rule.
GridPath volterra_apply(const GridPath& hdot);

struct SuperRate {
    double rate = 0.0;
    GridPath path;
};

/// Rate sqrt(pi) / (2 sqrt 2 chi) ||h'||^2 and the reconstructed path.
/// h' must be sampled at uniform cell midpoints (see midpoint_grid).
SuperRate rate_path_super(const GridPath& hdot, const VarianceSpec& spec);

struct KernelInversion {
    GridPath hdot;
    double condition = 0.0;
    bool regularized = false;
};

/// Solves the midpoint discretization of the Volterra map for h' given h on
/// a uniform grid starting at t = 0 with h(0) = 0. When the triangular system
/// has 1-norm condition above 1e12 a Tikhonov solve with relative parameter
/// 1e-8 is used instead.
KernelInversion kernel_invert_detail(const GridPath& h);
GridPath kernel_invert(const GridPath& h);

/// rho^2 times the current rate.
double rate_tagged(double rate_current, double rho);

struct GridRateSequence {
    std::vector<double> values;
    double inf = 0.0;
    double sup = 0.0;
};

/// (1/2) h^T A^{-1} h on each grid, A from variance_a in the regime of
/// `spec`. Each grid must contain the previous one.
GridRateSequence grid_quadratic_forms(const GridPath& h, const std::vector<std::vector<double>>& grids,
                                      const VarianceSpec& spec);
/// Critical-regime version; throws DomainError for other regimes.
GridRateSequence rate_beta1_grid(const GridPath& h, const std::vector<std::vector<double>>& grids,
                                 const VarianceSpec& spec);

/// ||phi||^2 / (2 chi).
double q_initial(const GridFunction& phi, double rho);
/// [G, G] / (2 chi); zero in the sub regime.
double q_dynamic(const SpaceTimeGridFunction& G, const VarianceSpec& spec);

/// Sigma(i, j) = Cov(Y_{t_i}(G) - Y_0(G), Y_{t_j}(G) - Y_0(G)).
CovarianceMatrix field_increment_covariance(const GridFunction& G, const std::vector<double>& times,
                                            const VarianceSpec& spec);

/// sup_xi {xi.r - xi^T Sigma xi / 2}: (1/2) r^T Sigma^{-1} r when Sigma is
/// invertible, the pseudo-inverse form when r lies in its range, else +inf.
double field_constraint_rate(const Eigen::VectorXd& r, const CovarianceMatrix& Sigma);

struct LowerBoundCheck {
    bool holds = false;
    double q = 0.0;       // initial cost of phi
    double bound = 0.0;   // (1/2) r^T A^{-1} r
    std::vector<double> currents;
};

/// Sub regime, no forcing: checks q_initial(phi) >= (1/2) r^T A^{-1} r - 1e-9
/// with r_i the macroscopic current at t_i.
LowerBoundCheck current_rate_lower_bound_check(const GridFunction& phi, const std::vector<double>& times,
                                               const VarianceSpec& spec);

/// Profile that is constant on the transport window [-v t_max, 0] and
/// carries current r at t_max; it attains the lower bound.
GridFunction saturating_profile(double t_max, const VarianceSpec& spec, double r = 1.0);

}  // namespace wasep
