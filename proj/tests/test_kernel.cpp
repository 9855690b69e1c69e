#include <cmath>

#include "doctest.h"
#include "wasep/errors.hpp"
#include "wasep/kernel.hpp"
#include "wasep/special.hpp"
#include "wasep/variance.hpp"

using namespace wasep;

TEST_CASE("kernel normalization constants") {
    CHECK(kernel_V() == doctest::Approx(1.59576912160573071).epsilon(1e-15));
    CHECK(std::sqrt(kernel_V()) * std::tgamma(0.75) == doctest::Approx(1.54799239968133707).epsilon(1e-15));
}

TEST_CASE("kernel values against high-precision references") {
    const struct {
        double t, s, value;
    } refs[] = {
        {1.0, 0.5, 0.82032262376475279554},
        {2.0, 0.1, 0.81939627628446999545},
        {1.0, 1e-6, 12.248168588591436588},
        {0.5, 0.49, 2.0462804392024631486},
    };
    for (const auto& r : refs) {
        CAPTURE(r.t);
        CAPTURE(r.s);
        CHECK(std::fabs(kernel_K(r.t, r.s) / r.value - 1.0) < 1e-10);
    }
}

TEST_CASE("kernel near the diagonal") {
    const double t = 1.3;
    const double s = t - 1e-9;
    CHECK(kernel_K(t, s) * std::pow(t - s, 0.25) ==
          doctest::Approx(1.0 / (std::sqrt(kernel_V()) * std::tgamma(0.75))).epsilon(1e-8));
    CHECK_THROWS_AS(kernel_K(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(kernel_K(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(kernel_K(1.0, 1.5), DomainError);
}

TEST_CASE("kernel covariance reproduces fBm") {
    const double grid[] = {0.4, 0.8, 1.2, 1.6, 2.0};
    for (double t : grid)
        for (double s : grid) {
            if (s > t) continue;
            CAPTURE(t);
            CAPTURE(s);
            CHECK(std::fabs(kernel_cov_integral(t, s) - fbm_cov(t, s)) < 1e-6);
        }
    for (double t : {0.5, 1.0, 2.0}) CHECK(std::fabs(kernel_cov_integral(t, t) - std::sqrt(t)) < 1e-6);
    CHECK(kernel_cov_integral(1.0, 1e-8) < 1e-3);
    CHECK_THROWS_AS(kernel_cov_integral(1.0, 2.0), DomainError);
}
