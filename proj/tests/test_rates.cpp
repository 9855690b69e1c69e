#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "wasep/errors.hpp"
#include "wasep/field_theory.hpp"
#include "wasep/rates.hpp"

using namespace wasep;

namespace {

const VarianceSpec kSuper(Regime::super, 1.0, 0.3);
const VarianceSpec kSub(Regime::sub, 1.0, 0.3);

std::vector<double> uniform_times(int m, double horizon) {
    std::vector<double> t;
    for (int i = 1; i <= m; ++i) t.push_back(horizon * i / m);
    return t;
}

GridPath sampled_path(double (*f)(double), int points, double horizon) {
    std::vector<double> t, v;
    for (int i = 0; i <= points; ++i) {
        t.push_back(horizon * i / points);
        v.push_back(f(t.back()));
    }
    return GridPath(t, v);
}

double smooth(double t) { return std::sin(2.0 * t) + 0.5 * t * t; }

}  // namespace

TEST_CASE("finite-dimensional rate") {
    const CovarianceMatrix one = covariance_matrix({1.0}, kSuper);
    CHECK(rate_finite_dim(Eigen::VectorXd::Zero(1), one) == 0.0);
    CHECK(rate_finite_dim(Eigen::VectorXd::Ones(1), one) == doctest::Approx(std::sqrt(std::numbers::pi / 2.0) / 0.42).epsilon(1e-12));

    const CovarianceMatrix A = covariance_matrix({0.25, 0.5, 1.0}, kSuper);
    Eigen::VectorXd r(3);
    r << 0.3, -0.1, 0.7;
    CHECK(rate_finite_dim(3.0 * r, A) == doctest::Approx(9.0 * rate_finite_dim(r, A)).epsilon(1e-13));
    CHECK(rate_finite_dim(r, A) > 0.0);
    CHECK(rate_finite_dim(r, A) == doctest::Approx(0.5 * r.dot(A.entries().inverse() * r)).epsilon(1e-10));

    const CovarianceMatrix half = covariance_matrix({0.5, 1.0}, VarianceSpec(Regime::sub, 1.0, 0.5));
    CHECK_THROWS_AS(rate_finite_dim(Eigen::VectorXd::Ones(2), half), SingularMatrix);
    CHECK_THROWS_AS(rate_finite_dim(Eigen::VectorXd::Ones(3), one), DomainError);
}

TEST_CASE("sub regime path rate") {
    const GridPath zero({0.0, 1.0}, {0.0, 0.0});
    CHECK(rate_path_sub(zero, kSub) == 0.0);
    const GridPath line({0.0, 0.5, 1.0}, {0.0, 0.5, 1.0});
    CHECK(rate_path_sub(line, kSub) == doctest::Approx(5.95238).epsilon(1e-6));
    const GridPath steep({0.0, 0.5, 1.0}, {0.0, 1.0, 2.0});
    CHECK(rate_path_sub(steep, kSub) == doctest::Approx(4.0 * rate_path_sub(line, kSub)).epsilon(1e-14));
    // Implicit h(0) = 0.
    CHECK(rate_path_sub(GridPath({1.0}, {1.0}), kSub) == doctest::Approx(5.95238).epsilon(1e-6));

    CHECK_THROWS_AS(rate_path_sub(line, VarianceSpec(Regime::sub, 1.0, 0.5)), DegenerateRegime);
    CHECK_THROWS_AS(rate_path_sub(line, kSuper), DomainError);
    CHECK_THROWS_AS(rate_path_sub(GridPath({0.0, 1.0}, {0.5, 1.0}), kSub), DomainError);
}

TEST_CASE("tagged rate") {
    CHECK(rate_tagged(5.95238, 0.3) == doctest::Approx(0.5357).epsilon(1e-4));
    CHECK(rate_tagged(0.0, 0.3) == 0.0);
    CHECK(rate_tagged(2.5, 1.0) == 2.5);
    CHECK(rate_tagged(5.0, 0.3) / 5.0 == 0.3 * 0.3);
    CHECK_THROWS_AS(rate_tagged(-1.0, 0.3), DomainError);
}

TEST_CASE("super regime rate and reconstruction") {
    const GridPath ones(midpoint_grid(1.0, 256), std::vector<double>(256, 1.0));
    const SuperRate sr = rate_path_super(ones, kSuper);
    const double expected = std::sqrt(std::numbers::pi) / (2.0 * std::numbers::sqrt2 * 0.21);
    CHECK(sr.rate == doctest::Approx(expected).epsilon(1e-13));
    CHECK(expected == doctest::Approx(2.984081).epsilon(1e-6));
    CHECK(sr.path.size() == 257);
    CHECK(sr.path.values.front() == 0.0);
    // Exact h(1) = int_0^1 K(1, s) ds.
    CHECK(sr.path.values.back() == doctest::Approx(0.95669783630138379).epsilon(0.01));

    const GridPath zero(midpoint_grid(1.0, 16), std::vector<double>(16, 0.0));
    const SuperRate z = rate_path_super(zero, kSuper);
    CHECK(z.rate == 0.0);
    for (double v : z.path.values) CHECK(v == 0.0);

    std::vector<double> a(64), b(64), c(64);
    for (int j = 0; j < 64; ++j) {
        a[static_cast<std::size_t>(j)] = std::cos(0.1 * j);
        b[static_cast<std::size_t>(j)] = 0.02 * j - 0.5;
        c[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(j)] + b[static_cast<std::size_t>(j)];
    }
    const auto mids = midpoint_grid(2.0, 64);
    const GridPath pa = volterra_apply(GridPath(mids, a));
    const GridPath pb = volterra_apply(GridPath(mids, b));
    const GridPath pc = volterra_apply(GridPath(mids, c));
    for (std::size_t i = 0; i < pc.size(); ++i)
        CHECK(std::fabs(pc.values[i] - pa.values[i] - pb.values[i]) < 1e-13 * (1.0 + std::fabs(pc.values[i])));

    CHECK_THROWS_AS(rate_path_super(GridPath({0.0, 0.5}, {1.0, 1.0}), kSuper), DomainError);
}

TEST_CASE("kernel inversion round trip") {
    const GridPath ones(midpoint_grid(1.0, 256), std::vector<double>(256, 1.0));
    const GridPath h = rate_path_super(ones, kSuper).path;
    const KernelInversion inv = kernel_invert_detail(h);
    CHECK_FALSE(inv.regularized);
    CHECK(inv.condition < 1e12);
    double err = 0.0;
    for (double v : inv.hdot.values) err += (v - 1.0) * (v - 1.0) / 256.0;
    CHECK(std::sqrt(err) < 0.01);

    const GridPath zero({0.0, 0.5, 1.0}, {0.0, 0.0, 0.0});
    for (double v : kernel_invert(zero).values) CHECK(v == 0.0);
    CHECK_THROWS_AS(kernel_invert(GridPath({0.0, 0.5, 1.0}, {0.1, 0.0, 0.0})), DomainError);
    CHECK_THROWS_AS(kernel_invert(GridPath({0.0, 0.4, 1.0}, {0.0, 0.0, 0.0})), DomainError);

    // A rough sampled fBm path: the solve completes; the round trip is exact
    // up to rounding for the unregularized system.
    const CovarianceMatrix A = covariance_matrix(uniform_times(64, 1.0), kSuper);
    const GridPath rough = sample_gaussian_path(A, 8);
    std::vector<double> t{0.0}, v{0.0};
    t.insert(t.end(), rough.times.begin(), rough.times.end());
    v.insert(v.end(), rough.values.begin(), rough.values.end());
    const GridPath path(t, v);
    const GridPath back = rate_path_super(kernel_invert(path), kSuper).path;
    double diff = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < path.size(); ++i) {
        diff += (back.values[i] - path.values[i]) * (back.values[i] - path.values[i]);
        norm += path.values[i] * path.values[i];
    }
    MESSAGE("rough-path round-trip relative L2 error: " << std::sqrt(diff / norm));
    CHECK(std::isfinite(diff));
}

TEST_CASE("grid quadratic forms: sub regime consistency") {
    const GridPath h = sampled_path(smooth, 4096, 1.0);
    const double exact = rate_path_sub(h, kSub);
    std::vector<std::vector<double>> grids;
    for (int m = 2; m <= 256; m *= 2) grids.push_back(uniform_times(m, 1.0));
    const GridRateSequence seq = grid_quadratic_forms(h, grids, kSub);
    for (std::size_t i = 1; i < seq.values.size(); ++i) CHECK(seq.values[i] >= seq.values[i - 1] - 1e-12);
    CHECK(std::fabs(seq.values.back() / exact - 1.0) < 0.01);
    CHECK(seq.inf == seq.values.front());
    CHECK(seq.sup == seq.values.back());
}

TEST_CASE("grid quadratic forms: super round trip") {
    const GridPath ones(midpoint_grid(1.0, 256), std::vector<double>(256, 1.0));
    const SuperRate sr = rate_path_super(ones, kSuper);
    const GridRateSequence seq = grid_quadratic_forms(sr.path, {uniform_times(256, 1.0)}, kSuper);
    CHECK(std::fabs(seq.values[0] / sr.rate - 1.0) < 0.02);
}

TEST_CASE("critical grid rates") {
    const VarianceSpec crit0(Regime::critical, 0.0, 0.3);
    const GridPath h = sampled_path(smooth, 1024, 1.0);
    std::vector<std::vector<double>> grids;
    for (int m = 2; m <= 256; m *= 2) grids.push_back(uniform_times(m, 1.0));
    const GridRateSequence c = rate_beta1_grid(h, grids, crit0);
    const GridRateSequence s = grid_quadratic_forms(h, grids, kSuper);
    for (std::size_t i = 0; i < c.values.size(); ++i)
        CHECK(std::fabs(c.values[i] - s.values[i]) <= 1e-10 * std::max(1.0, s.values[i]));

    const VarianceSpec crit(Regime::critical, 1.0, 0.3);
    const GridRateSequence d = rate_beta1_grid(h, grids, crit);
    for (std::size_t i = 1; i < d.values.size(); ++i) CHECK(d.values[i] >= d.values[i - 1] - 1e-9);
    CHECK(d.inf <= d.sup);

    const GridPath zero({0.0, 1.0}, {0.0, 0.0});
    for (double v : rate_beta1_grid(zero, grids, crit).values) CHECK(v == 0.0);
    CHECK_THROWS_AS(rate_beta1_grid(h, grids, kSuper), DomainError);
    CHECK_THROWS_AS(grid_quadratic_forms(h, {{0.5, 1.0}, {0.25, 1.0}}, kSuper), DomainError);
}

TEST_CASE("initial and dynamic costs") {
    const GridFunction G1 = ramp_G(1);
    CHECK(q_initial(GridFunction::zero(), 0.3) == 0.0);
    CHECK(q_initial(G1, 0.3) == doctest::Approx(0.79365).epsilon(1e-5));
    CHECK(q_initial(G1.scaled(2.0), 0.3) == doctest::Approx(4.0 * q_initial(G1, 0.3)).epsilon(1e-14));
    CHECK_THROWS_AS(q_initial(G1, 0.0), DegenerateRegime);
    CHECK_THROWS_AS(q_initial(G1, 1.0), DegenerateRegime);

    const SpaceTimeGridFunction G = SpaceTimeGridFunction::constant(G1, 1.0);
    CHECK(q_dynamic(G, kSuper) == doctest::Approx(2.38095).epsilon(1e-5));
    CHECK(q_dynamic(SpaceTimeGridFunction::constant(GridFunction::zero(), 1.0), kSuper) == 0.0);
    CHECK(q_dynamic(G, kSub) == 0.0);
}

TEST_CASE("field increment covariance and constraint rate") {
    const GridFunction G = smooth_ramp_G(64);
    const std::vector<double> times{0.5, 1.0};
    const CovarianceMatrix S = field_increment_covariance(G, times, kSuper);
    const CovarianceMatrix A = covariance_matrix(times, kSuper);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::fabs(S.entries()(i, j) / A.entries()(i, j) - 1.0) < 0.02);
    Eigen::VectorXd r(2);
    r << 0.1, 0.2;
    CHECK(std::fabs(field_constraint_rate(r, S) / rate_finite_dim(r, A) - 1.0) < 0.02);
    CHECK(field_constraint_rate(Eigen::VectorXd::Zero(2), S) == 0.0);

    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(2, 2);
    D(0, 0) = 0.5;
    D(1, 1) = 2.0;
    const CovarianceMatrix diag(times, D);
    CHECK(field_constraint_rate(r, diag) == doctest::Approx(0.5 * (0.01 / 0.5 + 0.04 / 2.0)));

    Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(2, 2);
    Z(0, 0) = 1.0;
    const CovarianceMatrix singular(times, Z);
    Eigen::VectorXd in(2);
    in << 0.3, 0.0;
    CHECK(field_constraint_rate(in, singular) == doctest::Approx(0.045));
    CHECK(std::isinf(field_constraint_rate(r, singular)));
}

TEST_CASE("current rate lower bound") {
    const std::vector<double> times{0.5, 1.0};
    const LowerBoundCheck zero = current_rate_lower_bound_check(GridFunction::zero(), times, kSub);
    CHECK(zero.holds);
    CHECK(zero.q == 0.0);
    CHECK(zero.bound == 0.0);

    Rng rng(2718);
    for (int k = 0; k < 25; ++k) {
        const double centre = -1.0 + 1.5 * rng.uniform();
        const double width = 0.05 + 0.45 * rng.uniform();
        const double amp = 2.0 * rng.uniform() - 1.0;
        const LowerBoundCheck c = current_rate_lower_bound_check(gaussian_bump_G(centre, width, amp), times, kSub);
        CHECK(c.holds);
    }

    const LowerBoundCheck sat = current_rate_lower_bound_check(saturating_profile(1.0, kSub), times, kSub);
    CHECK(sat.holds);
    CHECK(sat.q - sat.bound <= 0.05 * sat.q);
    CHECK(sat.currents[1] == doctest::Approx(1.0));

    CHECK_THROWS_AS(current_rate_lower_bound_check(GridFunction::zero(), times, VarianceSpec(Regime::sub, 1.0, 0.5)),
                    DegenerateRegime);
    CHECK_THROWS_AS(current_rate_lower_bound_check(GridFunction::zero(), times, kSuper), DomainError);
}
