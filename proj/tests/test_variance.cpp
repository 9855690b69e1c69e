#include <cmath>
#include <numbers>

#include "doctest.h"
#include "wasep/errors.hpp"
#include "wasep/rng.hpp"
#include "wasep/variance.hpp"

using namespace wasep;

TEST_CASE("variance spec") {
    const VarianceSpec s(Regime::sub, 1.0, 0.3);
    CHECK(s.chi() == doctest::Approx(0.21));
    CHECK(s.drift() == doctest::Approx(0.4));
    CHECK(s.velocity() == doctest::Approx(0.4));
    CHECK_FALSE(s.degenerate());
    CHECK(VarianceSpec(Regime::sub, 1.0, 0.5).degenerate());
    CHECK_FALSE(VarianceSpec(Regime::super, 1.0, 0.5).degenerate());
    CHECK(VarianceSpec(Regime::sub, 1.0, 0.8).velocity() == doctest::Approx(-0.6));
    CHECK(VarianceSpec::from_beta(0.5, 1.0, 0.3).regime == Regime::sub);
    CHECK(VarianceSpec::from_beta(1.0, 1.0, 0.3).regime == Regime::critical);
    CHECK(VarianceSpec::from_beta(2.0, 1.0, 0.3).regime == Regime::super);
    CHECK_THROWS_AS(VarianceSpec(Regime::sub, -1.0, 0.3), DomainError);
    CHECK_THROWS_AS(VarianceSpec(Regime::sub, 1.0, 1.2), DomainError);
}

TEST_CASE("f drift closed form") {
    CHECK(f_drift(0.0, 1.0) == 0.0);
    CHECK(f_drift(1.0, 0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
    CHECK(f_drift(1.0, 1.0) == doctest::Approx(0.5833155).epsilon(1e-6));
    double prev = 0.0;
    for (int k = 1; k <= 40; ++k) {
        const double v = f_drift(0.1 * k, 0.7);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("f drift against a Monte Carlo definition") {
    Rng rng(123);
    const int samples = 200000;
    for (double m : {0.0, 0.4, 1.0}) {
        for (double t : {0.5, 2.0}) {
            double sum = 0.0, sum2 = 0.0;
            for (int i = 0; i < samples; ++i) {
                const double x = std::max(std::sqrt(t) * rng.normal() - m * t, 0.0);
                sum += x;
                sum2 += x * x;
            }
            const double mean = sum / samples;
            const double se = std::sqrt((sum2 / samples - mean * mean) / samples);
            CHECK(std::fabs(m * t / 2.0 + mean - f_drift(t, m)) < 4.0 * se);
        }
    }
}

TEST_CASE("variance function values") {
    const VarianceSpec sup(Regime::super, 1.0, 0.3);
    CHECK(variance_a(1.0, 1.0, sup) == doctest::Approx(0.42 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-15));
    CHECK(variance_a(1.0, 1.0, sup) == doctest::Approx(0.21 * std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-12));
    for (Regime r : {Regime::sub, Regime::critical, Regime::super}) {
        const VarianceSpec s(r, 1.0, 0.3);
        CHECK(variance_a(0.0, 0.7, s) == 0.0);
        CHECK(variance_a(0.7, 0.0, s) == 0.0);
        CHECK(variance_a(0.3, 0.9, s) == variance_a(0.9, 0.3, s));
        CHECK(variance_a(0.5, 0.5, s) > 0.0);
    }
    const VarianceSpec half(Regime::sub, 1.0, 0.5);
    CHECK(variance_a(0.4, 1.3, half) == 0.0);
    const VarianceSpec sub(Regime::sub, 1.0, 0.3);
    CHECK(variance_a(0.5, 1.0, sub) == doctest::Approx(0.21 * 0.4 * 0.5));
}

TEST_CASE("critical regime continuity as alpha tends to zero") {
    const VarianceSpec crit(Regime::critical, 0.0, 0.3);
    const VarianceSpec sup(Regime::super, 1.0, 0.3);
    for (double t : {0.3, 0.7, 1.4})
        for (double s : {0.3, 0.7, 1.4}) CHECK(std::fabs(variance_a(t, s, crit) - variance_a(t, s, sup)) < 1e-10);
    const VarianceSpec tiny(Regime::critical, 1e-12, 0.3);
    CHECK(std::fabs(variance_a(1.0, 0.5, tiny) - variance_a(1.0, 0.5, sup)) < 1e-10);
}

TEST_CASE("fbm covariance") {
    CHECK(fbm_cov(1.0, 0.0) == 0.0);
    CHECK(fbm_cov(1.0, 1.0) == 1.0);
    const VarianceSpec sup(Regime::super, 1.0, 0.3);
    for (double t : {0.3, 0.7, 1.4})
        for (double s : {0.3, 0.7, 1.4})
            CHECK(std::fabs(variance_a(t, s, sup) - 0.21 * std::sqrt(2.0 / std::numbers::pi) * fbm_cov(t, s)) <
                  1e-12);
}
