#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "altphillips/cone.hpp"

using namespace altphillips;

TEST_CASE("transform maps the radial cone onto a quadratic")
{
    // v = beta(d+beta-2)/(2 d gamma) u^{2/beta} turns u = c_rad r^beta into
    // v = r^2/(2d) (the quadratic solution p has no angular dependence here).
    for (int d : {3, 4}) {
        for (double gamma : {0.3, 0.9}) {
            const Params p = make_params(d, gamma);
            for (double r : {0.5, 1.0, 3.0}) {
                const double u = p.c_rad * std::pow(r, p.beta);
                CHECK(transform_to_v(p, u) == doctest::Approx(r * r / (2.0 * d)).epsilon(1e-12));
                CHECK(transform_to_u(p, r * r / (2.0 * d)) == doctest::Approx(u).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("alpha_d quadrature against closed forms")
{
    CHECK(std::abs(alpha_d(3) - 1.5 * pi) <= 1e-9);
    CHECK(std::abs(alpha_d(4) - 8.0 / 3.0) <= 1e-9);
}

TEST_CASE("asymptotic seed in d = 3")
{
    const auto s = asymptotic_seed(3);
    CHECK(std::abs(s.L0 - pi / 4.0) <= 1e-12);
    CHECK(std::abs(s.M0 - pi * pi / 96.0) <= 1e-12);
    // F(M0, L0) = 0 for the slow system
    CHECK(std::abs(-3.0 * s.M0 + s.L0 * s.L0 / 2.0) <= 1e-12);
    CHECK(std::abs(-(s.alpha / 3.0) * s.M0 + std::pow(s.L0, 3) / 3.0) <= 1e-12);
}

TEST_CASE("obstacle-problem radial solution P_lambda")
{
    const int d = 3;
    const double lam = 0.25;
    // P'' + (d-1)/r P' = 1 on {P > 0}; P(lam) = P'(lam) = 0
    CHECK(P_lambda(d, lam, lam) == 0.0);
    CHECK(dP_lambda(d, lam, lam + 1e-14) == doctest::Approx(0.0).epsilon(1e-10));
    for (double r : {0.4, 0.7, 1.0}) {
        const double h = 1e-5;
        const double d2 = (P_lambda(d, lam, r + h) - 2.0 * P_lambda(d, lam, r) +
                           P_lambda(d, lam, r - h)) / (h * h);
        CHECK(d2 + (d - 1.0) / r * dP_lambda(d, lam, r) == doctest::Approx(1.0).epsilon(1e-5));
    }
}

TEST_CASE("cone build at d = 3, kappa = 1e-3")
{
    const auto cone = build_cone(3, 1e-3);
    CHECK(cone.newton_iters <= 10);
    CHECK(cone.newton_residual <= 1e-10);
    CHECK(cone.theta0 > 0.0);
    CHECK(cone.theta0 < cone.theta_m);

    // ODE residual at the stored nodes of both branches
    double worst = 0.0;
    for (const auto& traj : {&cone.pole, &cone.equator})
        for (const auto t : traj->t) {
            const double th = (double)t;
            if (th <= cone.theta0 * (1.0 + 1e-9)) continue;
            worst = std::max(worst, std::abs(cone.ode_residual(th)));
        }
    CHECK(worst <= 1e-6);

    // value/derivative continuity at the matching angle
    std::array<conedetail::Real, 2> ye, yo;
    cone.equator.eval((conedetail::Real)cone.theta_m, ye);
    cone.pole.eval((conedetail::Real)cone.theta_m, yo);
    CHECK(std::abs((double)(ye[0] - yo[0])) <= 1e-10);
    CHECK(std::abs((double)(ye[1] - yo[1])) <= 1e-10);

    // local quadratic coefficient at the contact angle
    const double h = 1e-4 * cone.theta0;
    const double fitted = cone.ubar(cone.theta0 + h) / (h * h);
    CHECK(fitted == doctest::Approx(pole_quadratic_coefficient(3, 1e-3)).epsilon(0.01));

    // doubling the matching coefficient leaves theta0 essentially unchanged
    ConeBuildOptions opt;
    opt.T = 2.0 * cone.T;
    const auto cone2 = build_cone(3, 1e-3, opt);
    CHECK(std::abs(cone2.theta0 - cone.theta0) / cone.theta0 < 1e-4);
}

TEST_CASE("cone build is bitwise deterministic")
{
    const auto a = build_cone(3, 1e-3);
    const auto b = build_cone(3, 1e-3);
    CHECK(a.theta0 == b.theta0);
    CHECK(a.M == b.M);
    CHECK(a.L == b.L);
    double ua, dua, ub, dub;
    a.eval(0.7, ua, dua);
    b.eval(0.7, ub, dub);
    CHECK(ua == ub);
    CHECK(dua == dub);
}

TEST_CASE("contact measure recovers the spherical-cap formula")
{
    const auto cone = build_cone(3, 1e-3);
    // d = 3: 2 * omega_2/(d+1) * int_0^theta0 sin^2 with omega_2 = 4 pi
    const double t0 = cone.theta0;
    const double expect = 2.0 * (4.0 * pi) / 4.0 * (t0 / 2.0 - std::sin(2.0 * t0) / 4.0);
    CHECK(contact_measure(cone) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("energy of the quadratic limit profile")
{
    // gamma = 1 (kappa = 0), d = 3: the cone degenerates to p = r^2 sin^2/(2d)
    // in untransformed variables too, and E(p; B_1) = pi^2/18.
    const double E = energy_in_ball(3, 1.0, 0.0,
                                    [](double th) { return std::sin(th) * std::sin(th) / 6.0; },
                                    [](double th) { return std::sin(2.0 * th) / 6.0; });
    CHECK(E == doctest::Approx(pi * pi / 18.0).epsilon(1e-9));
}

TEST_CASE("slope fit recovers an exact power law")
{
    std::vector<SweepRow> rows;
    for (double k : {1e-4, 1e-3, 1e-2}) {
        SweepRow r;
        r.kappa = k;
        r.gamma = gamma_from_kappa(k);
        r.measure = 7.0 * std::pow(1.0 - r.gamma, 3.0);
        rows.push_back(r);
    }
    CHECK(fit_scaling_slope(rows) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("pole family at vanishing kappa approaches the obstacle solution")
{
    // kappa = 0 exactly: the trace ODE becomes the obstacle-problem trace
    // equation; compare against p_lambda(theta) = P_lambda(sin theta).
    const double lam = 0.05;
    auto traj = solve_pole_family(3, 0.0, lam, 0.5);
    REQUIRE(traj.stop == StopReason::ReachedEnd);
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double th = lam * (1.0 + 1e-6) + (0.5 - lam * (1.0 + 1e-6)) * i / 400.0;
        std::array<conedetail::Real, 2> y;
        traj.eval((conedetail::Real)th, y);
        worst = std::max(worst, std::abs((double)y[0] - p_lambda_theta(3, lam, th)));
    }
    MESSAGE("max |pole family - p_lambda| on [lambda, 0.5] = ", worst);
    // regression pin: the pole family solves the exact trace equation while
    // p_lambda is only its leading-order model, so the gap is O(lambda^2 ubar)
    CHECK(worst < 5e-4);
}
