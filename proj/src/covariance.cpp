#include "wasep/covariance.hpp"

#include <cmath>
#include <limits>

#include "wasep/errors.hpp"

namespace wasep {

namespace {

constexpr double kJitters[] = {0.0, 1e-15, 1e-14, 1e-13, 1e-12};
constexpr double kRangeTolerance = 1e-12;

}  // namespace

CovarianceMatrix::CovarianceMatrix(std::vector<double> times, Eigen::MatrixXd entries)
    : times_(std::move(times)), entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) throw DomainError("CovarianceMatrix: matrix must be square");
    if (static_cast<std::size_t>(entries_.rows()) != times_.size())
        throw DomainError("CovarianceMatrix: dimension does not match the time grid");
    if (!entries_.allFinite()) throw DomainError("CovarianceMatrix: non-finite entry");
    const Eigen::MatrixXd asym = entries_ - entries_.transpose();
    if (asym.cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, entries_.cwiseAbs().maxCoeff()))
        throw DomainError("CovarianceMatrix: matrix must be symmetric");

    const double scale = entries_.rows() > 0 ? entries_.diagonal().maxCoeff() : 0.0;
    if (!(scale > 0.0)) return;
    for (double delta : kJitters) {
        Eigen::MatrixXd shifted = entries_;
        shifted.diagonal().array() += delta * scale;
        Eigen::LLT<Eigen::MatrixXd> llt(shifted);
        if (llt.info() != Eigen::Success) continue;
        Eigen::MatrixXd L = llt.matrixL();
        // Eigen's LLT accepts some semidefinite inputs with tiny pivots; a
        // pivot at roundoff level means the matrix is numerically singular.
        if (L.diagonal().minCoeff() <= 1e-5 * std::sqrt(scale)) continue;
        lower_ = std::move(L);
        factorized_ = true;
        jitter_ = delta;
        break;
    }
}

const Eigen::MatrixXd& CovarianceMatrix::lower() const {
    if (!factorized_) throw SingularMatrix("covariance matrix has no Cholesky factor");
    return lower_;
}

double CovarianceMatrix::quadratic_form(const Eigen::VectorXd& r) const {
    if (r.size() != dim()) throw DomainError("quadratic_form: dimension mismatch");
    const Eigen::VectorXd y = lower().triangularView<Eigen::Lower>().solve(r);
    return y.squaredNorm();
}

double CovarianceMatrix::pseudo_quadratic_form(const Eigen::VectorXd& r) const {
    if (r.size() != dim()) throw DomainError("pseudo_quadratic_form: dimension mismatch");
    if (dim() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(entries_);
    const Eigen::VectorXd& lambda = eig.eigenvalues();
    const Eigen::MatrixXd& V = eig.eigenvectors();
    const double top = std::max(lambda.cwiseAbs().maxCoeff(), 0.0);
    const Eigen::VectorXd coeff = V.transpose() * r;
    double value = 0.0;
    double outside = 0.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (top > 0.0 && lambda(i) > kRangeTolerance * top)
            value += coeff(i) * coeff(i) / lambda(i);
        else
            outside += coeff(i) * coeff(i);
    }
    if (std::sqrt(outside) > 1e-9 * std::max(1.0, r.norm())) return std::numeric_limits<double>::infinity();
    return value;
}

CovarianceMatrix covariance_matrix(const std::vector<double>& times, const VarianceSpec& spec) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] > 0.0)) throw DomainError("covariance_matrix: times must be positive");
        if (i > 0 && !(times[i] > times[i - 1])) throw DomainError("covariance_matrix: times must increase");
    }
    const auto m = static_cast<Eigen::Index>(times.size());
    Eigen::MatrixXd A(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double a = variance_a(times[static_cast<std::size_t>(i)], times[static_cast<std::size_t>(j)], spec);
            A(i, j) = a;
            A(j, i) = a;
        }
    return CovarianceMatrix(times, std::move(A));
}

GridPath sample_gaussian_path(const CovarianceMatrix& A, Rng& rng) {
    const Eigen::Index m = A.dim();
    Eigen::VectorXd z(m);
    for (Eigen::Index i = 0; i < m; ++i) z(i) = rng.normal();

    Eigen::VectorXd x;
    if (A.factorized()) {
        x = A.lower() * z;
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A.entries());
        const Eigen::VectorXd& lambda = eig.eigenvalues();
        const double top = m > 0 ? lambda.cwiseAbs().maxCoeff() : 0.0;
        if (m > 0 && lambda.minCoeff() < -1e-10 * std::max(top, 1e-300))
            throw SingularMatrix("sample_gaussian_path: matrix is not positive semidefinite");
        const Eigen::VectorXd root = lambda.cwiseMax(0.0).cwiseSqrt();
        x = eig.eigenvectors() * root.asDiagonal() * z;
    }
    return GridPath(A.times(), std::vector<double>(x.data(), x.data() + x.size()));
}

GridPath sample_gaussian_path(const CovarianceMatrix& A, std::uint64_t seed) {
    Rng rng(seed);
    return sample_gaussian_path(A, rng);
}

}  // namespace wasep
