#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "wasep/grid_path.hpp"
#include "wasep/rng.hpp"
#include "wasep/variance.hpp"

namespace wasep {

/// Symmetric positive-semidefinite covariance over a time grid, with its
/// Cholesky factor cached at construction.
///
/// Factorization is attempted on A, then on A + delta max_i A_ii I for
/// delta in {1e-15, 1e-14, 1e-13, 1e-12}. When every attempt fails the
/// matrix is flagged singular; solves then throw and only the
/// pseudo-inverse route is available.
class CovarianceMatrix {
public:
    CovarianceMatrix(std::vector<double> times, Eigen::MatrixXd entries);

    const std::vector<double>& times() const noexcept { return times_; }
    const Eigen::MatrixXd& entries() const noexcept { return entries_; }
    Eigen::Index dim() const noexcept { return entries_.rows(); }

    bool factorized() const noexcept { return factorized_; }
    /// Relative diagonal jitter used by the factorization (0 when none).
    double jitter() const noexcept { return jitter_; }
    /// Lower Cholesky factor. Throws SingularMatrix when not factorized.
    const Eigen::MatrixXd& lower() const;

    /// r^T A^{-1} r via two triangular solves. Throws SingularMatrix.
    double quadratic_form(const Eigen::VectorXd& r) const;

    /// r^T A^+ r using the eigen-decomposition. Returns +infinity when r
    /// has a component outside the range of A.
    double pseudo_quadratic_form(const Eigen::VectorXd& r) const;

private:
    std::vector<double> times_;
    Eigen::MatrixXd entries_;
    Eigen::MatrixXd lower_;
    bool factorized_ = false;
    double jitter_ = 0.0;
};

/// A(i, j) = a(t_i, t_j). Times must be positive and strictly increasing.
CovarianceMatrix covariance_matrix(const std::vector<double>& times, const VarianceSpec& spec);

/// Mean-zero Gaussian vector with covariance A, returned on A's time grid.
/// Uses the Cholesky factor, or the symmetric square root when A is only
/// semidefinite (a zero matrix gives the zero path). Throws SingularMatrix
/// when A has a clearly negative eigenvalue.
GridPath sample_gaussian_path(const CovarianceMatrix& A, Rng& rng);
GridPath sample_gaussian_path(const CovarianceMatrix& A, std::uint64_t seed);

}  // namespace wasep
