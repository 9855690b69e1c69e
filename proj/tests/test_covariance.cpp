#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "wasep/covariance.hpp"
#include "wasep/errors.hpp"

using namespace wasep;

TEST_CASE("covariance matrix entries") {
    const VarianceSpec sup(Regime::super, 1.0, 0.3);
    const CovarianceMatrix one = covariance_matrix({1.0}, sup);
    CHECK(one.dim() == 1);
    CHECK(one.entries()(0, 0) == doctest::Approx(0.21 * std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-12));
    CHECK(one.factorized());

    const std::vector<double> times{0.25, 0.5, 1.0};
    const CovarianceMatrix A = covariance_matrix(times, sup);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(A.entries()(i, j) == A.entries()(j, i));
            CHECK(A.entries()(i, j) ==
                  variance_a(times[static_cast<std::size_t>(i)], times[static_cast<std::size_t>(j)], sup));
        }
    CHECK(A.factorized());
    CHECK(A.jitter() == 0.0);
    const Eigen::MatrixXd L = A.lower();
    CHECK((L * L.transpose() - A.entries()).cwiseAbs().maxCoeff() < 1e-14);

    CHECK_THROWS_AS(covariance_matrix({0.5, 0.5}, sup), DomainError);
    CHECK_THROWS_AS(covariance_matrix({0.0, 0.5}, sup), DomainError);
}

TEST_CASE("Brownian covariance always factorizes") {
    const VarianceSpec sub(Regime::sub, 1.0, 0.3);
    std::vector<double> times;
    for (int i = 1; i <= 64; ++i) times.push_back(i / 64.0);
    const CovarianceMatrix A = covariance_matrix(times, sub);
    CHECK(A.factorized());
    CHECK(A.entries()(3, 10) == doctest::Approx(0.084 * 4.0 / 64.0));
}

TEST_CASE("degenerate sub regime is flagged singular") {
    const VarianceSpec half(Regime::sub, 1.0, 0.5);
    const CovarianceMatrix A = covariance_matrix({0.5, 1.0}, half);
    CHECK_FALSE(A.factorized());
    CHECK_THROWS_AS(A.lower(), SingularMatrix);
    CHECK_THROWS_AS(A.quadratic_form(Eigen::VectorXd::Ones(2)), SingularMatrix);
    const GridPath zero = sample_gaussian_path(A, 5);
    CHECK(zero.values == std::vector<double>{0.0, 0.0});
}

TEST_CASE("pseudo-inverse quadratic form") {
    Eigen::MatrixXd S(2, 2);
    S << 1.0, 1.0, 1.0, 1.0;
    const CovarianceMatrix A({0.5, 1.0}, S);
    CHECK_FALSE(A.factorized());
    Eigen::VectorXd in(2), out(2);
    in << 2.0, 2.0;
    out << 1.0, -1.0;
    CHECK(A.pseudo_quadratic_form(in) == doctest::Approx(4.0));
    CHECK(std::isinf(A.pseudo_quadratic_form(out)));

    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(2, 2);
    D(0, 0) = 2.0;
    D(1, 1) = 0.5;
    const CovarianceMatrix B({0.5, 1.0}, D);
    CHECK(B.quadratic_form(in) == doctest::Approx(4.0 / 2.0 + 4.0 / 0.5));
    CHECK(B.pseudo_quadratic_form(in) == doctest::Approx(B.quadratic_form(in)));
}

TEST_CASE("asymmetric or mismatched input is rejected") {
    Eigen::MatrixXd S(2, 2);
    S << 1.0, 0.5, 0.4, 1.0;
    CHECK_THROWS_AS(CovarianceMatrix({0.5, 1.0}, S), DomainError);
    CHECK_THROWS_AS(CovarianceMatrix({0.5}, Eigen::MatrixXd::Identity(2, 2)), DomainError);
}

TEST_CASE("sampler is deterministic and has the right covariance") {
    const VarianceSpec sup(Regime::super, 1.0, 0.3);
    const CovarianceMatrix A = covariance_matrix({0.5, 1.0}, sup);
    CHECK(sample_gaussian_path(A, 9).values == sample_gaussian_path(A, 9).values);

    Rng rng(10);
    const int draws = 100000;
    double s00 = 0.0, s01 = 0.0, s11 = 0.0;
    double inc_cov = 0.0;
    const VarianceSpec sub(Regime::sub, 1.0, 0.3);
    const CovarianceMatrix B = covariance_matrix({0.5, 1.0}, sub);
    for (int i = 0; i < draws; ++i) {
        const GridPath p = sample_gaussian_path(A, rng);
        s00 += p.values[0] * p.values[0];
        s01 += p.values[0] * p.values[1];
        s11 += p.values[1] * p.values[1];
        const GridPath b = sample_gaussian_path(B, rng);
        inc_cov += b.values[0] * (b.values[1] - b.values[0]);
    }
    const auto& E = A.entries();
    // Var(X Y) = E[X^2] E[Y^2] + E[XY]^2 for centred Gaussians.
    auto se = [&](int i, int j) { return std::sqrt((E(i, i) * E(j, j) + E(i, j) * E(i, j)) / draws); };
    CHECK(std::fabs(s00 / draws - E(0, 0)) < 4.0 * se(0, 0));
    CHECK(std::fabs(s01 / draws - E(0, 1)) < 4.0 * se(0, 1));
    CHECK(std::fabs(s11 / draws - E(1, 1)) < 4.0 * se(1, 1));
    const double v = 0.084 * 0.5;
    CHECK(std::fabs(inc_cov / draws) < 4.0 * std::sqrt(v * v / draws));
}

TEST_CASE("grid path interpolation") {
    const GridPath p({0.5, 1.0}, {1.0, 3.0});
    CHECK(p.at(0.25) == doctest::Approx(0.5));
    CHECK(p.at(0.75) == doctest::Approx(2.0));
    CHECK(p.at(1.0) == 3.0);
    CHECK_THROWS_AS(p.at(1.5), DomainError);
    CHECK_THROWS_AS(GridPath({1.0, 0.5}, {0.0, 0.0}), DomainError);
    CHECK(GridPath({0.0, 0.25, 0.5}, {0.0, 0.0, 0.0}).uniform_step() == doctest::Approx(0.25));
    CHECK(GridPath({0.0, 0.25, 0.6}, {0.0, 0.0, 0.0}).uniform_step() == 0.0);
}
