#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "altphillips/params.hpp"

using namespace altphillips;

TEST_CASE("scaling parameter relations")
{
    for (double gamma : {0.1, 0.5, 0.9, 0.97, 0.999}) {
        const Params p = make_params(3, gamma);
        CHECK(p.beta == doctest::Approx(2.0 / (2.0 - gamma)).epsilon(1e-15));
        CHECK(p.kappa == doctest::Approx(4.0 * (1.0 - gamma) / (2.0 - gamma)).epsilon(1e-15));
        // beta = 2 - kappa/2 identically
        CHECK(p.beta == doctest::Approx(2.0 - 0.5 * p.kappa).epsilon(1e-15));
        // round trip
        CHECK(gamma_from_kappa(kappa_from_gamma(gamma)) == doctest::Approx(gamma).epsilon(1e-15));
    }
}

TEST_CASE("profile coefficients satisfy their defining identities")
{
    for (int d : {3, 4, 5}) {
        for (double gamma : {0.2, 0.7, 0.97}) {
            const Params p = make_params(d, gamma);
            // c_rad^{2-gamma} = gamma / (beta (d + beta - 2))
            CHECK(std::pow(p.c_rad, 2.0 - gamma) ==
                  doctest::Approx(gamma / (p.beta * (d + p.beta - 2.0))).epsilon(1e-14));
            // A^{2-gamma} = 2 / beta^2
            CHECK(std::pow(p.A_coef, 2.0 - gamma) ==
                  doctest::Approx(2.0 / (p.beta * p.beta)).epsilon(1e-14));
        }
    }
}

TEST_CASE("discriminant closed forms")
{
    // Delta(d, 1) = (d-2)^2 exactly
    for (int d = 3; d <= 8; ++d)
        CHECK(discriminant(d, 1.0) == doctest::Approx((d - 2.0) * (d - 2.0)).epsilon(1e-15));
    // frozen oracle: Delta(3, 0.2) = 1 - 608/81 = -527/81
    CHECK(discriminant(3, 0.2) == doctest::Approx(-527.0 / 81.0).epsilon(1e-14));
    // frozen oracle: Delta(4, 0.1) = 4 - 4*(20/19)*(2+20/19)*(9/10)
    {
        const double beta = 2.0 / 1.9;
        const double expect = 4.0 - 4.0 * beta * (2.0 + beta) * 0.9;
        CHECK(discriminant(4, 0.1) == doctest::Approx(expect).epsilon(1e-14));
        CHECK(expect < 0.0);
    }
}

TEST_CASE("stability threshold in d = 3")
{
    auto thr = stability_threshold(3);
    REQUIRE(thr.has_value());
    // Exact root of Delta(3, gamma) = 0 on the relevant branch:
    // gamma* = (18 - 8 sqrt(2)) / 7.
    const double exact = (18.0 - 8.0 * std::sqrt(2.0)) / 7.0;
    CHECK(*thr == doctest::Approx(exact).epsilon(1e-12));
    // sign change across the root
    CHECK(discriminant(3, *thr - 1e-6) < 0.0);
    CHECK(discriminant(3, *thr + 1e-6) > 0.0);
    CHECK(is_stable(3, 0.99));
    CHECK(!is_stable(3, 0.2));
}

TEST_CASE("input validation")
{
    CHECK_THROWS_AS((void)make_params(2, 0.5), invalid_argument);
    CHECK_THROWS_AS((void)make_params(3, -0.1), invalid_argument);
    CHECK_THROWS_AS((void)gamma_from_kappa(2.5), invalid_argument);
}
