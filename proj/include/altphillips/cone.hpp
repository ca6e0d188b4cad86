#ifndef ALTPHILLIPS_CONE_HPP
#define ALTPHILLIPS_CONE_HPP

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "common.hpp"
#include "integrate.hpp"
#include "params.hpp"

/// Construction of the axially symmetric cone with positive-density contact
/// set in R^{d+1}: the transformed problem, the quadratic model, the
/// near-equator and near-pole solution families of the trace ODE, their
/// Newton matching, and derived quantities (contact measure, energy,
/// scaling-law sweep).
///
/// Throughout, u is beta-homogeneous and v = beta(d+beta-2)/(2 d gamma) u^{2/beta}
/// is its 2-homogeneous transform; the trace of v on the unit sphere is
/// r^2 ubar(theta) with theta the angle from the rotation axis. The trace ODE is
///   ubar'' + (d-1) cot(theta) ubar' + 2(d+1) ubar
///     = (kappa/4)(ubar')^2/ubar + kappa ubar + (1 - kappa/(2d)).
namespace altphillips {

/// v from u and back (pointwise transform of values).
inline double transform_to_v(const Params& p, double u_value)
{
    if (u_value <= 0.0) return 0.0;
    return p.beta * (p.d + p.beta - 2.0) / (2.0 * p.d * p.gamma) *
           std::pow(u_value, 2.0 / p.beta);
}
inline double transform_to_u(const Params& p, double v_value)
{
    if (v_value <= 0.0) return 0.0;
    return std::pow(2.0 * p.d * p.gamma / (p.beta * (p.d + p.beta - 2.0)) * v_value,
                    0.5 * p.beta);
}

/// Residual of the transformed Euler-Lagrange equation
///   Delta v + ((beta-2)/2) |grad v|^2 / v - (1 + (beta-2)/d) on {v > 0}.
inline double residual_transformed(const Params& p, double v, double grad_sq, double lap)
{
    if (v <= 0.0) return 0.0;
    return lap + 0.5 * (p.beta - 2.0) * grad_sq / v - (1.0 + (p.beta - 2.0) / p.d);
}

/// Radial solution of the d-dimensional obstacle problem with contact ball
/// of radius lam:
///   P_lam(r) = r^2/(2d) - lam^2/(2(d-2)) + lam^d r^{-(d-2)}/(d(d-2)) for r >= lam,
/// and 0 below. Composed with sin(theta) it is the model for the pole family
/// at kappa = 0.
inline double P_lambda(int d, double lam, double r)
{
    if (d < 3) throw invalid_argument("P_lambda: d >= 3 required");
    if (r <= lam) return 0.0;
    return r * r / (2.0 * d) - lam * lam / (2.0 * (d - 2.0)) +
           std::pow(lam, d) * std::pow(r, -(d - 2.0)) / (d * (d - 2.0));
}
inline double dP_lambda(int d, double lam, double r)
{
    if (r <= lam) return 0.0;
    return r / d - std::pow(lam, d) * std::pow(r, -(d - 1.0)) / d;
}
inline double p_lambda_theta(int d, double lam, double theta)
{
    return P_lambda(d, std::sin(lam), std::sin(theta));
}

/// alpha_d = int_0^{pi/2} [(d+1) sin^2 - d]^2 sin^{d-3}; enters the
/// asymptotic matching seed. Closed forms: alpha_3 = 3 pi/2, alpha_4 = 8/3.
inline double alpha_d(int d)
{
    if (d < 3) throw invalid_argument("alpha_d: d >= 3 required");
    return quadrature(
        [d](double t) {
            const double s = std::sin(t);
            const double q = (d + 1.0) * s * s - d;
            return q * q * std::pow(s, d - 3.0);
        },
        0.0, pi / 2, 1e-13);
}

/// Leading-order matching data (M0, L0): the zero of the slow system
///   F(M, L) = (-d M + L^2/(2(d-2)),  -(alpha_d/d) M + L^d / d),
/// i.e. L0^{d-2} = alpha_d/(2d(d-2)), M0 = L0^2/(2d(d-2)).
struct AsymptoticSeed {
    double M0, L0, alpha;
};

inline AsymptoticSeed asymptotic_seed(int d)
{
    AsymptoticSeed s;
    s.alpha = alpha_d(d);
    s.L0 = std::pow(s.alpha / (2.0 * d * (d - 2.0)), 1.0 / (d - 2.0));
    s.M0 = s.L0 * s.L0 / (2.0 * d * (d - 2.0));
    return s;
}

namespace conedetail {

using Real = long double;
using Traj = Trajectory<Real, 2>;

/// Right-hand side of the trace ODE, solved for ubar''.
struct TraceRhs {
    int d;
    Real kappa;
    void operator()(Real th, const std::array<Real, 2>& y, std::array<Real, 2>& f) const
    {
        const Real cot = std::cos(th) / std::sin(th);
        f[0] = y[1];
        f[1] = -(d - 1.0L) * cot * y[1] - 2.0L * (d + 1.0L) * y[0] +
               0.25L * kappa * y[1] * y[1] / y[0] + kappa * y[0] +
               (1.0L - kappa / (2.0L * d));
    }
};

inline OdeOptions<Real> family_options()
{
    OdeOptions<Real> opt;
    opt.rtol = 1e-17L;
    opt.atol = 1e-22L;
    return opt;
}

inline bool positive_state(Real, const std::array<Real, 2>& y) { return y[0] > 0.0L; }

} // namespace conedetail

/// Solution branch started at the equator with ubar(pi/2) = 1/(2d) + mu,
/// ubar'(pi/2) = 0, integrated backward to theta_min. Stops early (with the
/// trajectory flag) if ubar reaches zero.
inline conedetail::Traj solve_equator_family(int d, double kappa, double mu,
                                             double theta_min)
{
    if (d < 3) throw invalid_argument("solve_equator_family: d >= 3 required");
    if (!(theta_min > 0.0) || !(theta_min < pi / 2))
        throw invalid_argument("solve_equator_family: theta_min in (0, pi/2) required");
    conedetail::TraceRhs rhs{d, (conedetail::Real)kappa};
    std::array<conedetail::Real, 2> y0{1.0L / (2.0L * d) + (conedetail::Real)mu, 0.0L};
    if (!(y0[0] > 0.0L))
        throw invalid_argument("solve_equator_family: mu <= -1/(2d)");
    return integrate<conedetail::Real, 2>(rhs, (conedetail::Real)(pi / 2), y0,
                                          (conedetail::Real)theta_min,
                                          conedetail::family_options(),
                                          conedetail::positive_state);
}

/// Solution branch started at the pole contact angle lambda with
/// ubar(lambda) = ubar'(lambda) = 0, seeded by the local quadratic expansion
/// ubar = a (theta-lambda)^2 at theta = lambda + h, h = 1e-6 lambda, where
/// the leading balance gives
///   a = (1 - kappa/(2d)) / (2 - kappa + 2 (d-1) cot(lambda) h).
inline conedetail::Traj solve_pole_family(int d, double kappa, double lambda,
                                          double theta_max)
{
    if (d < 3) throw invalid_argument("solve_pole_family: d >= 3 required");
    if (!(lambda > 0.0) || !(theta_max > lambda) || !(theta_max <= pi / 2 + 1e-12))
        throw invalid_argument("solve_pole_family: need 0 < lambda < theta_max <= pi/2");
    using conedetail::Real;
    const Real h = (Real)1e-6L * (Real)lambda;
    const Real cotl = std::cos((Real)lambda) / std::sin((Real)lambda);
    // local expansion ubar = a h^2 + b h^3 + O(h^4 cot^2) at the contact angle
    const Real a = (1.0L - (Real)kappa / (2.0L * d)) / (2.0L - (Real)kappa);
    const Real b = -a * (d - 1.0L) * cotl / (3.0L - (Real)kappa);
    conedetail::TraceRhs rhs{d, (Real)kappa};
    std::array<Real, 2> y0{a * h * h + b * h * h * h, 2.0L * a * h + 3.0L * b * h * h};
    return integrate<Real, 2>(rhs, (Real)lambda + h, y0, (Real)theta_max,
                              conedetail::family_options(), conedetail::positive_state);
}

/// Local quadratic coefficient of the pole family at its contact angle
/// (leading order; the acceptance check compares the fitted value to this).
inline double pole_quadratic_coefficient(int d, double kappa)
{
    return (1.0 - kappa / (2.0 * d)) / (2.0 - kappa);
}

/// The assembled axially symmetric cone: trace profile ubar on [0, pi],
/// zero below theta_0 = lambda, pole branch on (theta_0, theta_m], equator
/// branch on (theta_m, pi/2], mirrored across the equator.
struct ConeSolution {
    int d = 0;
    double kappa = 0.0;
    double gamma = 0.0;
    double M = 0.0, L = 0.0;       ///< matched slow variables
    double mu = 0.0, lambda = 0.0; ///< mu = M kappa^{2/(d-2)}, lambda = L kappa^{1/(d-2)}
    double theta0 = 0.0;           ///< contact angle (= lambda)
    double theta_m = 0.0;          ///< matching angle
    double T = 0.0;                ///< theta_m = T kappa^{1/(d-2)}
    int newton_iters = 0;
    double newton_residual = 0.0;  ///< final scaled matching residual (sup norm)
    conedetail::Traj pole, equator;

    /// Trace value/derivative; theta in [0, pi], mirrored across pi/2.
    void eval(double theta, double& u, double& du) const
    {
        double sign = 1.0;
        if (theta > pi / 2) {
            theta = pi - theta;
            sign = -1.0;
        }
        if (theta <= theta0) {
            u = 0.0;
            du = 0.0;
            return;
        }
        std::array<conedetail::Real, 2> y;
        if (theta <= theta_m) {
            const auto tlo = pole.t.front();
            pole.eval(std::max((conedetail::Real)theta, tlo), y);
        } else {
            equator.eval((conedetail::Real)theta, y);
        }
        u = (double)y[0];
        du = sign * (double)y[1];
    }
    double ubar(double theta) const
    {
        double u, du;
        eval(theta, u, du);
        return u;
    }
    double dubar(double theta) const
    {
        double u, du;
        eval(theta, u, du);
        return du;
    }
    /// Second derivative from the ODE (theta in (theta0, pi)).
    double d2ubar(double theta) const
    {
        if (theta > pi / 2) theta = pi - theta; // ubar'' is even across the equator
        double u, du;
        eval(theta, u, du);
        if (u <= 0.0) return 0.0;
        const double cot = std::cos(theta) / std::sin(theta);
        return -(d - 1.0) * cot * du - 2.0 * (d + 1.0) * u +
               0.25 * kappa * du * du / u + kappa * u + (1.0 - kappa / (2.0 * d));
    }
    /// Residual of the trace ODE at theta (for certification).
    double ode_residual(double theta) const
    {
        // d2ubar is defined through the ODE, so re-derive the second
        // derivative from the stored Hermite data instead.
        if (theta > pi / 2) theta = pi - theta;
        const auto& traj = (theta <= theta_m) ? pole : equator;
        std::array<conedetail::Real, 2> y, f;
        traj.eval((conedetail::Real)theta, y, &f);
        const double u = (double)y[0], du = (double)y[1], d2u = (double)f[1];
        const double cot = std::cos(theta) / std::sin(theta);
        return d2u + (d - 1.0) * cot * du + 2.0 * (d + 1.0) * u -
               (0.25 * kappa * du * du / u + kappa * u + (1.0 - kappa / (2.0 * d)));
    }
};

/// Options for the Newton matching.
struct ConeBuildOptions {
    double T = 0.0;            ///< matching angle multiplier; 0 = default 20 max(1, M0 + L0^d)
    double fd_step = 1e-3;     ///< relative step of the central-difference Jacobian
    double tol = 1e-10;        ///< convergence threshold on the scaled residual
    /// The scaled residual divides an O(eps) integration error by a power of
    /// kappa, so for small kappa the iteration stalls at an arithmetic floor
    /// well above tol. A stalled build is still accepted up to this bound;
    /// the reported residual stays honest in newton_residual.
    double stall_tol = 1e-3;
    int max_iters = 40;
    double seed_M = 0.0; ///< optional warm start (e.g. continuation in kappa)
    double seed_L = 0.0;
};

namespace conedetail {

/// Scaled matching residual G(M, L) at theta_m.
inline std::array<Real, 2> matching_G(int d, double kappa, double M, double L,
                                      double theta_m)
{
    const double ex1 = 1.0 / (d - 2.0);
    const double mu = M * std::pow(kappa, 2.0 * ex1);
    const double lambda = L * std::pow(kappa, ex1);
    if (!(lambda > 0.0) || !(lambda < theta_m))
        throw numerical_error("matching_G: lambda outside (0, theta_m)");
    auto eq = solve_equator_family(d, kappa, mu, theta_m);
    auto po = solve_pole_family(d, kappa, lambda, theta_m);
    if (eq.stop != StopReason::ReachedEnd || po.stop != StopReason::ReachedEnd)
        throw numerical_error("matching_G: family solve stopped before theta_m");
    std::array<Real, 2> ye, yo;
    eq.eval((Real)theta_m, ye);
    po.eval((Real)theta_m, yo);
    const Real s1 = std::pow((Real)kappa, (Real)(2.0 * ex1));
    const Real s2 = std::pow((Real)kappa, (Real)(d * ex1)) *
                    std::pow(std::sin((Real)theta_m), (Real)(1.0 - d));
    return {(ye[0] - yo[0]) / s1, (ye[1] - yo[1]) / s2};
}

} // namespace conedetail

/// Build the cone for (d, kappa) by Newton iteration on the scaled matching
/// map G(M, L) from the asymptotic seed (M0, L0).
inline ConeSolution build_cone(int d, double kappa, ConeBuildOptions opt = {})
{
    if (d < 3) throw invalid_argument("build_cone: d >= 3 required");
    if (!(kappa > 0.0) || !(kappa < 1.0))
        throw invalid_argument("build_cone: kappa in (0, 1) required");
    const AsymptoticSeed seed = asymptotic_seed(d);
    if (opt.T <= 0.0) opt.T = 20.0 * std::max(1.0, seed.M0 + std::pow(seed.L0, d));
    const double ex1 = 1.0 / (d - 2.0);
    const double theta_m = opt.T * std::pow(kappa, ex1);
    if (!(theta_m < pi / 2))
        throw numerical_error("build_cone: matching angle T kappa^{1/(d-2)} >= pi/2; "
                              "reduce kappa or T");

    using conedetail::Real;
    double M = opt.seed_M > 0.0 ? opt.seed_M : seed.M0;
    double L = opt.seed_L > 0.0 ? opt.seed_L : seed.L0;
    double bestM = M, bestL = L, best = 1e300;
    int iters = 0, stall = 0;
    for (; iters < opt.max_iters; ++iters) {
        const auto G = conedetail::matching_G(d, kappa, M, L, theta_m);
        const double resid = std::max(std::abs((double)G[0]), std::abs((double)G[1]));
        stall = (resid <= 0.5 * best) ? 0 : stall + 1;
        if (resid < best) {
            best = resid;
            bestM = M;
            bestL = L;
        }
        if (best <= opt.tol || stall >= 5) break;
        const double hM = opt.fd_step * std::max(std::abs(M), 1e-3);
        const double hL = opt.fd_step * std::max(std::abs(L), 1e-3);
        const auto GMp = conedetail::matching_G(d, kappa, M + hM, L, theta_m);
        const auto GMm = conedetail::matching_G(d, kappa, M - hM, L, theta_m);
        const auto GLp = conedetail::matching_G(d, kappa, M, L + hL, theta_m);
        const auto GLm = conedetail::matching_G(d, kappa, M, L - hL, theta_m);
        const Real j11 = (GMp[0] - GMm[0]) / (2.0L * (Real)hM);
        const Real j21 = (GMp[1] - GMm[1]) / (2.0L * (Real)hM);
        const Real j12 = (GLp[0] - GLm[0]) / (2.0L * (Real)hL);
        const Real j22 = (GLp[1] - GLm[1]) / (2.0L * (Real)hL);
        const Real det = j11 * j22 - j12 * j21;
        if (det == 0.0L) throw numerical_error("build_cone: singular Jacobian");
        double dM = (double)((G[0] * j22 - G[1] * j12) / det);
        double dL = (double)((j11 * G[1] - j21 * G[0]) / det);
        // damped update: back off until the trial point is admissible and
        // does not blow the residual up
        double damp = 1.0;
        for (int k = 0; k < 30; ++k, damp *= 0.5) {
            try {
                const auto Gt = conedetail::matching_G(d, kappa, M - damp * dM,
                                                       L - damp * dL, theta_m);
                const double rt =
                    std::max(std::abs((double)Gt[0]), std::abs((double)Gt[1]));
                if (rt < 4.0 * resid) break;
            } catch (const numerical_error&) {
            }
        }
        M -= damp * dM;
        L -= damp * dL;
    }
    M = bestM;
    L = bestL;
    const double resid = best;
    if (resid > std::max(opt.tol, opt.stall_tol))
        throw numerical_error("build_cone: Newton failed to reach tolerance " +
                              format_g17(std::max(opt.tol, opt.stall_tol)) +
                              " (residual " + format_g17(resid) + ")");

    ConeSolution c;
    c.d = d;
    c.kappa = kappa;
    c.gamma = gamma_from_kappa(kappa);
    c.M = M;
    c.L = L;
    c.mu = M * std::pow(kappa, 2.0 * ex1);
    c.lambda = L * std::pow(kappa, ex1);
    c.theta0 = c.lambda;
    c.theta_m = theta_m;
    c.T = opt.T;
    c.newton_iters = iters;
    c.newton_residual = resid;
    c.pole = solve_pole_family(d, kappa, c.lambda, theta_m);
    c.equator = solve_equator_family(d, kappa, c.mu, theta_m);
    return c;
}

/// H^d measure of the contact (zero) set of the cone inside the unit ball of
/// R^{d+1}: the double spherical cap of opening theta0,
///   2 * omega_{d-1}/(d+1) * int_0^{theta0} sin^{d-1}.
inline double contact_measure(const ConeSolution& c)
{
    return 2.0 * sphere_area(c.d) / (c.d + 1.0) *
           quadrature([&](double s) { return std::pow(std::sin(s), c.d - 1.0); }, 0.0,
                      c.theta0, 1e-13);
}

/// Energy of the (untransformed) beta-homogeneous minimizer candidate in the
/// unit ball of R^{d+1}, using the closed-form radial integral and angular
/// quadrature:
///   u(r,theta) = r^beta g(theta),  g = (c_t ubar)^{beta/2},
///   c_t = 2 d gamma / (beta (d+beta-2)).
template <class UbarFn, class DubarFn>
double energy_in_ball(int d, double gamma, double theta0, UbarFn&& ubar, DubarFn&& dubar)
{
    const Params p = make_params(d, gamma);
    const double ct = 2.0 * d * gamma / (p.beta * (d + p.beta - 2.0));
    auto g = [&](double th) { return std::pow(ct * ubar(th), 0.5 * p.beta); };
    auto dg = [&](double th) {
        return 0.5 * p.beta * std::pow(ct * ubar(th), 0.5 * p.beta - 1.0) * ct * dubar(th);
    };
    const double dirichlet = quadrature(
        [&](double th) {
            const double gv = g(th), dgv = dg(th);
            return 0.5 * (p.beta * p.beta * gv * gv + dgv * dgv) *
                   std::pow(std::sin(th), d - 1.0);
        },
        theta0, pi / 2, 1e-11);
    const double potential = quadrature(
        [&](double th) {
            return std::pow(g(th), gamma) * std::pow(std::sin(th), d - 1.0);
        },
        theta0, pi / 2, 1e-11);
    // Both halves of the sphere; radial factors from beta-homogeneity.
    return 2.0 * sphere_area(d) *
           (dirichlet / (2.0 * p.beta + d - 1.0) + potential / (p.beta * gamma + d + 1.0));
}

inline double energy_in_ball(const ConeSolution& c)
{
    return energy_in_ball(c.d, c.gamma, c.theta0,
                          [&](double th) { return c.ubar(th); },
                          [&](double th) { return c.dubar(th); });
}

/// One row of the contact-measure scaling sweep.
struct SweepRow {
    double kappa = 0.0;
    double gamma = 0.0;
    double theta0 = 0.0;
    double measure = 0.0;
    int newton_iters = 0;
    double newton_residual = 0.0;
};

inline std::vector<SweepRow> scaling_sweep(int d, const std::vector<double>& kappas,
                                           ConeBuildOptions opt = {})
{
    std::vector<SweepRow> rows(kappas.size());
    for (std::size_t i = 0; i < kappas.size(); ++i) {
        const ConeSolution c = build_cone(d, kappas[i], opt);
        rows[i] = {c.kappa, c.gamma, c.theta0, contact_measure(c), c.newton_iters,
                   c.newton_residual};
    }
    return rows;
}

/// Least-squares slope of log(measure) against log(1 - gamma); the predicted
/// scaling-law exponent is d/(d-2).
inline double fit_scaling_slope(const std::vector<SweepRow>& rows)
{
    if (rows.size() < 2) throw invalid_argument("fit_scaling_slope: need >= 2 rows");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : rows) {
        const double x = std::log(1.0 - r.gamma);
        const double y = std::log(r.measure);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = (double)rows.size();
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace altphillips

#endif // ALTPHILLIPS_CONE_HPP
