#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "altphillips/radial.hpp"

using namespace altphillips;

TEST_CASE("radial cone solves its Euler-Lagrange equation")
{
    // u'' + (d-1)/r u' = gamma u^{gamma-1} for u = c_rad r^beta
    for (int d : {3, 4}) {
        for (double gamma : {0.2, 0.7, 0.97}) {
            const auto cone = radial_cone(d, gamma);
            const Params& p = cone.p;
            for (double r : {0.5, 1.0, 2.0}) {
                const double u = cone.value(r);
                const double d2u = p.c_rad * p.beta * (p.beta - 1.0) * std::pow(r, p.beta - 2.0);
                const double lhs = d2u + (d - 1.0) / r * cone.deriv(r);
                const double rhs = gamma * std::pow(u, gamma - 1.0);
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("instability witness is strictly negative where the discriminant is")
{
    for (auto [d, gamma] : {std::pair{3, 0.2}, std::pair{4, 0.1}}) {
        const auto w = instability_witness(d, gamma);
        CHECK(w.discr < 0.0);
        CHECK(w.quadratic_form < 0.0);
        CHECK(w.r1 < w.r2);
        CHECK(w.r1 > 0.0);
    }
    // stable parameters must be rejected
    CHECK_THROWS_AS((void)instability_witness(3, 0.99), invalid_argument);
}

TEST_CASE("radial upper leaf: ordering, monotonicity, extrapolation stability")
{
    const auto leaf = upper_leaf_radial(3, 0.97, 50.0);
    const auto cert = certify_radial_leaf(leaf);
    CHECK(cert.pass);
    CHECK(cert.stability < 1e-6);
    CHECK(cert.worst_margin >= -1e-9);

    const auto cone = radial_cone(3, 0.97);
    REQUIRE(leaf.r.size() >= 1000);
    for (std::size_t i = 0; i < leaf.r.size(); ++i) {
        CHECK(leaf.v[i] >= 1.0);
        CHECK(leaf.dv[i] >= -1e-12);
        const double gap = leaf.v[i] - cone.value(leaf.r[i]);
        CHECK(gap > 0.0);
        CHECK(gap <= 1.0 + 1e-12);
    }
}

TEST_CASE("radial lower leaf: identities hold exactly along the V-branch")
{
    const int d = 3;
    const double gamma = 0.999, eta = std::pow(2.0 * d, -1.5);
    const auto leaf = lower_leaf_radial(d, gamma, eta);
    const Params& p = leaf.p;

    CHECK(leaf.r_eta > 0.0);
    CHECK(leaf.r_eta < leaf.R_eta);

    // (V')^2 / V^gamma = A^{2-gamma} beta^2 = 2 identically on the V-branch
    for (double f : {0.2, 0.5, 0.9}) {
        const double r = leaf.r_eta + f * (leaf.R_eta - leaf.r_eta);
        const double V = leaf.value(r), dV = leaf.deriv(r);
        CHECK(dV * dV / std::pow(V, gamma) == doctest::Approx(2.0).epsilon(1e-10));
        CHECK(leaf.residual(r) >= -1e-12);
    }
    // derivative ratio at the gluing radius stays below 1
    CHECK(lower_leaf_derivative_ratio(leaf) <= 1.0);
    (void)p;
}

TEST_CASE("radial lower leaf certification")
{
    const auto leaf = lower_leaf_radial(3, 0.999, std::pow(6.0, -1.5));
    const auto cert = certify_radial_leaf(leaf);
    CHECK(cert.pass);
    CHECK(cert.worst_margin >= -1e-8);
    CHECK(std::abs(cert.fb_limit - 2.0) <= 1e-3);
    CHECK(cert.derivative_ratio <= 1.0);
    CHECK(cert.samples >= 1000);
}
