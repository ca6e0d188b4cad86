#ifndef ALTPHILLIPS_FUNDAMENTAL_HPP
#define ALTPHILLIPS_FUNDAMENTAL_HPP

#include <array>
#include <cmath>

#include "common.hpp"
#include "integrate.hpp"

/// Fundamental solutions of the linearized trace operator near the equator
/// and the pole, and variation-of-parameters solvers built on them.
///
/// Near the equator the operator is
///   L_p v = v'' + (d-1-kappa) cot(theta) v' + 2(d+1-kappa) v,
/// with the closed-form kernel element V0 and a second element phi fixed by
/// phi(pi/2) = 0, phi'(pi/2) = 1. Near the pole the relevant operator is the
/// pure Laplace part L u = u'' + (d-1) cot(theta) u'.
namespace altphillips {

/// Closed-form kernel element of L_p, normalized to V0(pi/2) = 1:
///   v0(theta) = sin^2(theta)/(2d) - (1 - kappa/d) / (2(d+1-kappa)).
struct EquatorV0 {
    int d;
    double kappa;
    double norm; ///< v0(pi/2)

    EquatorV0(int d_, double kappa_) : d(d_), kappa(kappa_)
    {
        if (d < 2) throw invalid_argument("EquatorV0: d >= 2 required");
        norm = raw(pi / 2);
        if (norm == 0.0) throw numerical_error("EquatorV0: degenerate normalization");
    }

    double raw(double theta) const
    {
        const double s = std::sin(theta);
        return s * s / (2.0 * d) - (1.0 - kappa / d) / (2.0 * (d + 1.0 - kappa));
    }
    double value(double theta) const { return raw(theta) / norm; }
    double deriv(double theta) const
    {
        return std::sin(theta) * std::cos(theta) / d / norm;
    }
};

/// Second kernel element phi of L_p with phi(pi/2) = 0, phi'(pi/2) = 1,
/// obtained by integrating the ODE backward from pi/2 in extended precision
/// (the Liouville/Wronskian identity
///   phi' V0 - phi V0' = sin^{-d+1+kappa}(theta)
/// is kept as the accuracy invariant; see liouville_residual()).
struct EquatorPhi {
    int d;
    double kappa;
    double theta_min;
    EquatorV0 v0;
    Trajectory<long double, 2> traj;

    EquatorPhi(int d_, double kappa_, double theta_min_ = 1e-3)
        : d(d_), kappa(kappa_), theta_min(theta_min_), v0(d_, kappa_)
    {
        if (!(theta_min > 0.0) || !(theta_min < pi / 2))
            throw invalid_argument("EquatorPhi: theta_min in (0, pi/2) required");
        const long double dd = d, kk = kappa;
        auto rhs = [dd, kk](long double th, const std::array<long double, 2>& y,
                            std::array<long double, 2>& f) {
            const long double cot = std::cos(th) / std::sin(th);
            f[0] = y[1];
            f[1] = -(dd - 1 - kk) * cot * y[1] - 2 * (dd + 1 - kk) * y[0];
        };
        OdeOptions<long double> opt;
        opt.rtol = 1e-16L;
        opt.atol = 1e-18L;
        traj = integrate<long double, 2>(rhs, (long double)(pi / 2),
                                         std::array<long double, 2>{0.0L, 1.0L},
                                         (long double)theta_min, opt);
        if (traj.stop != StopReason::ReachedEnd)
            throw numerical_error("EquatorPhi: integration did not reach theta_min");
    }

    void eval(double theta, double& phi, double& dphi) const
    {
        std::array<long double, 2> y;
        traj.eval((long double)theta, y);
        phi = (double)y[0];
        dphi = (double)y[1];
    }
    double value(double theta) const
    {
        double p, dp;
        eval(theta, p, dp);
        return p;
    }

    /// (phi' V0 - phi V0') / sin^{-d+1+kappa} - 1; should vanish identically.
    double liouville_residual(double theta) const
    {
        double p, dp;
        eval(theta, p, dp);
        const double w = dp * v0.value(theta) - p * v0.deriv(theta);
        const double expect = std::pow(std::sin(theta), -double(d) + 1.0 + kappa);
        return w / expect - 1.0;
    }
};

/// Particular solution of L_p w = rho with w(pi/2) = w'(pi/2) = 0 by
/// variation of parameters:
///   alpha(theta) = -int_theta^{pi/2} rho V0 sin^{d-1-kappa},
///   beta(theta)  =  int_theta^{pi/2} rho phi sin^{d-1-kappa},
///   w = phi alpha + V0 beta,  w' = phi' alpha + V0' beta.
struct VopEquatorResult {
    double w, dw, alpha, beta;
};

template <class Rho>
VopEquatorResult vop_equator(const EquatorPhi& basis, Rho&& rho, double theta,
                             double quad_tol = 1e-12)
{
    const int d = basis.d;
    const double kappa = basis.kappa;
    const EquatorV0& v0 = basis.v0;
    auto weight = [&](double t) { return std::pow(std::sin(t), double(d) - 1.0 - kappa); };
    const double a = quadrature(
        [&](double t) { return rho(t) * v0.value(t) * weight(t); }, theta, pi / 2, quad_tol);
    const double b = quadrature(
        [&](double t) { return rho(t) * basis.value(t) * weight(t); }, theta, pi / 2,
        quad_tol);
    VopEquatorResult r;
    r.alpha = -a;
    r.beta = b;
    double p, dp;
    basis.eval(theta, p, dp);
    r.w = p * r.alpha + v0.value(theta) * r.beta;
    r.dw = dp * r.alpha + v0.deriv(theta) * r.beta;
    return r;
}

/// Particular solution of u'' + (d-1) cot(theta) u' = rho with
/// u(lambda) = u'(lambda) = 0, via the fundamental pair {1, phi} where
/// phi(theta) = int_theta^{pi/2} sin^{-d+1}:
///   alpha(theta) = -int_lambda^theta rho sin^{d-1},
///   beta(theta)  =  int_lambda^theta rho phi sin^{d-1},
///   u = phi alpha + beta,  u' = -sin^{-d+1}(theta) alpha.
struct VopPoleResult {
    double w, dw, alpha, beta;
};

template <class Rho>
VopPoleResult vop_pole(int d, double lambda, Rho&& rho, double theta,
                       double quad_tol = 1e-12)
{
    if (d < 3) throw invalid_argument("vop_pole: d >= 3 required");
    if (!(lambda >= 0.0) || !(theta > lambda) || !(theta <= pi / 2))
        throw invalid_argument("vop_pole: need 0 <= lambda < theta <= pi/2");
    auto phi = [d](double t) {
        return quadrature([d](double s) { return std::pow(std::sin(s), 1.0 - d); }, t,
                          pi / 2, 1e-13);
    };
    VopPoleResult r;
    r.alpha = -quadrature(
        [&](double t) { return rho(t) * std::pow(std::sin(t), double(d) - 1.0); }, lambda,
        theta, quad_tol);
    r.beta = quadrature(
        [&](double t) { return rho(t) * phi(t) * std::pow(std::sin(t), double(d) - 1.0); },
        lambda, theta, quad_tol);
    r.w = phi(theta) * r.alpha + r.beta;
    r.dw = -std::pow(std::sin(theta), 1.0 - d) * r.alpha;
    return r;
}

} // namespace altphillips

#endif // ALTPHILLIPS_FUNDAMENTAL_HPP
