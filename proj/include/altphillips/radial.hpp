#ifndef ALTPHILLIPS_RADIAL_HPP
#define ALTPHILLIPS_RADIAL_HPP

#include <array>
#include <cmath>
#include <vector>

#include "common.hpp"
#include "integrate.hpp"
#include "params.hpp"

/// The radial cone c_rad r^beta, its instability witness in the unstable
/// range, and the upper/lower foliation leaves around it with certification.
namespace altphillips {

/// u_rad(r) = c_rad r^beta.
struct RadialCone {
    Params p;
    double value(double r) const { return p.c_rad * std::pow(r, p.beta); }
    double deriv(double r) const { return p.c_rad * p.beta * std::pow(r, p.beta - 1.0); }
};

inline RadialCone radial_cone(int d, double gamma) { return RadialCone{make_params(d, gamma)}; }

/// Destabilizing direction for Delta(d, gamma) < 0: the oscillating kernel
/// element phi(r) = r^{-(d-2)/2} cos( sqrt(|Delta|)/2 * log r ) is shifted by
/// one and truncated between two consecutive radii r1 < r2 < 1 where
/// phi = -1, so that phi_t = (phi + 1) * chi_(r1,r2) is admissible; the
/// second variation at the radial cone is then negative.
struct InstabilityWitness {
    int d;
    double gamma;
    double discr;          ///< Delta(d, gamma), must be negative
    double r1, r2;         ///< truncation radii, phi(r1) = phi(r2) = -1
    double quadratic_form; ///< second variation of the energy at u_rad in direction phi_t
};

inline InstabilityWitness instability_witness(int d, double gamma)
{
    const double D = discriminant(d, gamma);
    if (!(D < 0.0))
        throw invalid_argument("instability_witness: requires Delta(d, gamma) < 0");
    const double omega = 0.5 * std::sqrt(-D);
    const double m = 0.5 * (d - 2.0);
    auto phi_s = [&](double s) { return std::exp(-m * s) * std::cos(omega * s) + 1.0; };

    // Scan s = log r downward from 0; crossings of phi = -1 alternate, and the
    // second and third enclose an interval where phi > -1 with equality at the
    // ends (the first crossing pairs with s = 0 where phi(1) = 1, not -1).
    std::vector<double> crossings;
    const double ds = (pi / omega) / 400.0;
    double s_prev = 0.0, f_prev = phi_s(0.0);
    for (double s = -ds; crossings.size() < 3; s -= ds) {
        if (s < -40.0 * pi / omega)
            throw numerical_error("instability_witness: crossings not found");
        const double f = phi_s(s);
        if ((f_prev > 0.0) != (f > 0.0)) {
            double lo = s, hi = s_prev; // f changes sign on [lo, hi]
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if ((phi_s(mid) > 0.0) == (phi_s(hi) > 0.0)) hi = mid;
                else lo = mid;
            }
            crossings.push_back(0.5 * (lo + hi));
        }
        s_prev = s;
        f_prev = f;
    }
    InstabilityWitness w;
    w.d = d;
    w.gamma = gamma;
    w.discr = D;
    w.r1 = std::exp(crossings[2]);
    w.r2 = std::exp(crossings[1]);

    // Second variation: omega_{d-1} * int_{r1}^{r2} [ (phi_t')^2
    //   + gamma (gamma-1) c_rad^{gamma-2} phi_t^2 / r^2 ] r^{d-1} dr,
    // where gamma (gamma-1) c_rad^{gamma-2} = -(1-gamma) beta (d+beta-2).
    const Params p = make_params(d, gamma);
    const double hardy = (1.0 - gamma) * p.beta * (d + p.beta - 2.0);
    auto integrand = [&](double r) {
        const double s = std::log(r);
        const double e = std::exp(-m * s);
        const double val = e * std::cos(omega * s) + 1.0;
        const double dval = e * (-m * std::cos(omega * s) - omega * std::sin(omega * s)) / r;
        return (dval * dval - hardy * val * val / (r * r)) * std::pow(r, d - 1.0);
    };
    w.quadratic_form = sphere_area(d) * quadrature(integrand, w.r1, w.r2, 1e-12);
    return w;
}

/// Upper leaf of the radial foliation: the solution v of
///   v'' + (d-1) v'/r = gamma v^{gamma-1},  v(0) = 1, v'(0) = 0,
/// computed by regularizing the singular coefficient as (d-1)/(r+eps) and
/// Richardson-extrapolating eps -> 0 over a halving schedule.
struct RadialUpperLeaf {
    Params p;
    double R_max = 0.0;
    double eps_final = 0.0;  ///< smallest regularization used
    double stability = 0.0;  ///< max rel. change of the extrapolant under the last halving
    std::vector<double> r, v, dv;           ///< extrapolated profile samples
    std::vector<double> v_eps, dv_eps;      ///< profile at eps_final (for the eps-level bound)

    double value(double rr) const { return interp(v, dv, rr); }
    double deriv(double rr) const { return interp_d(dv, rr); }

private:
    double interp(const std::vector<double>& f, const std::vector<double>& df, double rr) const
    {
        const double h = r[1] - r[0];
        std::size_t i = std::min(r.size() - 2, (std::size_t)std::max(0.0, rr / h));
        const double u = (rr - r[i]) / h;
        const double u2 = u * u, u3 = u2 * u;
        return (2 * u3 - 3 * u2 + 1) * f[i] + (u3 - 2 * u2 + u) * h * df[i] +
               (-2 * u3 + 3 * u2) * f[i + 1] + (u3 - u2) * h * df[i + 1];
    }
    double interp_d(const std::vector<double>& df, double rr) const
    {
        const double h = r[1] - r[0];
        std::size_t i = std::min(r.size() - 2, (std::size_t)std::max(0.0, rr / h));
        const double u = (rr - r[i]) / h;
        return (1 - u) * df[i] + u * df[i + 1];
    }
};

inline RadialUpperLeaf upper_leaf_radial(int d, double gamma, double R_max,
                                         double eps0 = 1e-2, int n_eps = 7,
                                         int n_samples = 1001)
{
    if (!(R_max > 0.0) || n_eps < 3 || n_samples < 2)
        throw invalid_argument("upper_leaf_radial: bad arguments");
    RadialUpperLeaf leaf;
    leaf.p = make_params(d, gamma);
    leaf.R_max = R_max;
    leaf.r = linspace(0.0, R_max, n_samples);

    std::vector<std::vector<double>> vs(n_eps), dvs(n_eps);
    for (int k = 0; k < n_eps; ++k) {
        const double eps = eps0 * std::pow(0.5, k);
        auto rhs = [d, gamma, eps](double rr, const std::array<double, 2>& y,
                                   std::array<double, 2>& f) {
            f[0] = y[1];
            f[1] = -(d - 1.0) * y[1] / (rr + eps) + gamma * std::pow(y[0], gamma - 1.0);
        };
        OdeOptions<double> opt;
        opt.rtol = 1e-12;
        opt.atol = 1e-13;
        auto traj = integrate<double, 2>(rhs, 0.0, {1.0, 0.0}, R_max, opt);
        if (traj.stop != StopReason::ReachedEnd)
            throw numerical_error("upper_leaf_radial: IVP solve failed");
        vs[k].resize(n_samples);
        dvs[k].resize(n_samples);
        for (int i = 0; i < n_samples; ++i) {
            std::array<double, 2> y;
            traj.eval(leaf.r[i], y);
            vs[k][i] = y[0];
            dvs[k][i] = y[1];
        }
        leaf.eps_final = eps;
    }
    // First-order Richardson with the halving schedule: v ~ v_eps + C eps,
    // so 2 v_{eps/2} - v_eps cancels the leading term. Stability compares the
    // extrapolants built from the last two eps pairs.
    const int n = n_samples;
    std::vector<double> ex_prev(n), ex_last(n);
    for (int i = 0; i < n; ++i) {
        ex_prev[i] = 2.0 * vs[n_eps - 2][i] - vs[n_eps - 3][i];
        ex_last[i] = 2.0 * vs[n_eps - 1][i] - vs[n_eps - 2][i];
    }
    double st = 0.0;
    for (int i = 0; i < n; ++i)
        st = std::max(st, std::abs(ex_last[i] - ex_prev[i]) / (1.0 + std::abs(ex_last[i])));
    leaf.stability = st;
    leaf.v = ex_last;
    leaf.dv.resize(n);
    for (int i = 0; i < n; ++i)
        leaf.dv[i] = 2.0 * dvs[n_eps - 1][i] - dvs[n_eps - 2][i];
    leaf.v_eps = vs[n_eps - 1];
    leaf.dv_eps = dvs[n_eps - 1];
    return leaf;
}

/// Lower leaf of the radial foliation: the glued profile
///   Phi(r) = A [(r - r_eta)_+]^beta            on [0, R_eta],
///   Phi(r) = u_rad(r) - r^{-(d-2)/2}           on (R_eta, infty),
/// where R_eta solves u_rad - r^{-(d-2)/2} = eta u_rad, and r_eta matches
/// the values at R_eta.
struct RadialLowerLeaf {
    Params p;
    double eta = 0.0;
    double R_eta = 0.0;
    double r_eta = 0.0;

    double value(double r) const
    {
        if (r <= R_eta) {
            const double s = r - r_eta;
            return s > 0.0 ? p.A_coef * std::pow(s, p.beta) : 0.0;
        }
        return p.c_rad * std::pow(r, p.beta) - std::pow(r, -0.5 * (p.d - 2.0));
    }
    double deriv(double r) const
    {
        if (r <= R_eta) {
            const double s = r - r_eta;
            return s > 0.0 ? p.A_coef * p.beta * std::pow(s, p.beta - 1.0) : 0.0;
        }
        const double m = 0.5 * (p.d - 2.0);
        return p.c_rad * p.beta * std::pow(r, p.beta - 1.0) + m * std::pow(r, -m - 1.0);
    }
    double second_deriv(double r) const
    {
        if (r <= R_eta) {
            const double s = r - r_eta;
            return s > 0.0 ? p.A_coef * p.beta * (p.beta - 1.0) * std::pow(s, p.beta - 2.0)
                           : 0.0;
        }
        const double m = 0.5 * (p.d - 2.0);
        return p.c_rad * p.beta * (p.beta - 1.0) * std::pow(r, p.beta - 2.0) -
               m * (m + 1.0) * std::pow(r, -m - 2.0);
    }
    /// Residual of the one-dimensional radial equation.
    double residual(double r) const
    {
        const double f = value(r);
        if (f <= 0.0) return 0.0;
        return second_deriv(r) + (p.d - 1.0) * deriv(r) / r -
               p.gamma * std::pow(f, p.gamma - 1.0);
    }
};

inline RadialLowerLeaf lower_leaf_radial(int d, double gamma, double eta)
{
    if (!(eta > 0.0) || !(eta < 1.0))
        throw invalid_argument("lower_leaf_radial: eta in (0,1) required");
    RadialLowerLeaf leaf;
    leaf.p = make_params(d, gamma);
    leaf.eta = eta;
    const double m = 0.5 * (d - 2.0);
    // (1-eta) c_rad R^beta = R^{-m}  =>  R = [(1-eta) c_rad]^{-1/(beta+m)}.
    leaf.R_eta = std::pow((1.0 - eta) * leaf.p.c_rad, -1.0 / (leaf.p.beta + m));
    // A (R - r_eta)^beta = eta u_rad(R)  =>  r_eta = R (1 - (eta c_rad / A)^{1/beta}).
    leaf.r_eta =
        leaf.R_eta *
        (1.0 - std::pow(eta * leaf.p.c_rad / leaf.p.A_coef, 1.0 / leaf.p.beta));
    return leaf;
}

/// Derivative comparison at the matching radius R_eta (must be <= 1 for the
/// glued profile to be a subsolution in the viscosity sense):
///   V'(R_eta)/U'(R_eta) = beta / (beta + (1-eta)(d-2)/2) * eta R_eta/(R_eta - r_eta).
inline double lower_leaf_derivative_ratio(const RadialLowerLeaf& leaf)
{
    const double m = 0.5 * (leaf.p.d - 2.0);
    return leaf.p.beta / (leaf.p.beta + (1.0 - leaf.eta) * m) * leaf.eta * leaf.R_eta /
           (leaf.R_eta - leaf.r_eta);
}

/// Certification summary for a radial leaf.
struct RadialCertification {
    bool pass = false;
    double worst_margin = 0.0;     ///< most negative inequality margin seen
    double worst_location = 0.0;   ///< radius where it occurred
    double fb_limit = 0.0;         ///< Richardson limit of (Phi')^2 / Phi^gamma at the free boundary (lower leaf)
    double derivative_ratio = 0.0; ///< lower leaf matching-derivative ratio
    double stability = 0.0;        ///< eps-extrapolation stability (upper leaf)
    int samples = 0;
};

/// Upper-leaf checks (orderings around u_rad): v >= 1, v' >= 0,
/// 0 < v - u_rad <= 1, (v - u_rad)' < 0, and the eps-level barrier
/// v_eps < 1 + gamma r^2 / 2.
inline RadialCertification certify_radial_leaf(const RadialUpperLeaf& leaf)
{
    RadialCertification c;
    c.stability = leaf.stability;
    const RadialCone cone{leaf.p};
    double worst = 1e300;
    double where = 0.0;
    auto update = [&](double margin, double r) {
        if (margin < worst) {
            worst = margin;
            where = r;
        }
    };
    for (std::size_t i = 0; i < leaf.r.size(); ++i) {
        const double r = leaf.r[i];
        update(leaf.v[i] - 1.0, r);
        update(leaf.dv[i], r);
        const double D = leaf.v[i] - cone.value(r);
        update(D, r);
        update(1.0 - D, r);
        if (r > 0.0) update(cone.deriv(r) - leaf.dv[i], r); // D' < 0
        update(1.0 + 0.5 * leaf.p.gamma * r * r - leaf.v_eps[i], r);
    }
    c.samples = (int)leaf.r.size();
    c.worst_margin = worst;
    c.worst_location = where;
    c.pass = worst >= -1e-9 && leaf.stability < 1e-6;
    return c;
}

/// Lower-leaf checks: residual >= -tol on a grid graded toward r_eta, the
/// free-boundary slope limit (Phi')^2/Phi^gamma -> 2 via Richardson samples
/// r_eta (1 + 2^{-k} h), and the derivative ratio at R_eta <= 1.
inline RadialCertification certify_radial_leaf(const RadialLowerLeaf& leaf,
                                               int n_samples = 1000,
                                               double r_outer_factor = 10.0,
                                               double tol = 1e-8)
{
    RadialCertification c;
    double worst = 1e300;
    double where = 0.0;
    const auto grid =
        graded_grid(leaf.r_eta, r_outer_factor * leaf.R_eta, n_samples, 3.0);
    for (double r : grid) {
        const double m = leaf.residual(r);
        if (m < worst) {
            worst = m;
            where = r;
        }
    }
    // Free-boundary limit by Richardson over a halving approach schedule.
    const double h = 1e-3 * (leaf.R_eta - leaf.r_eta);
    double fb[7];
    for (int k = 0; k < 7; ++k) {
        const double r = leaf.r_eta + h * std::pow(0.5, k);
        const double val = leaf.value(r), dv = leaf.deriv(r);
        fb[k] = dv * dv / std::pow(val, leaf.p.gamma);
    }
    // The exponent combination makes the ratio exactly constant in closed
    // form; extrapolate anyway to stay representation-agnostic.
    c.fb_limit = 2.0 * fb[6] - fb[5];
    c.derivative_ratio = lower_leaf_derivative_ratio(leaf);
    c.samples = n_samples;
    c.worst_margin = worst;
    c.worst_location = where;
    c.pass = worst >= -tol && std::abs(c.fb_limit - 2.0) <= 1e-3 &&
             c.derivative_ratio <= 1.0;
    return c;
}

} // namespace altphillips

#endif // ALTPHILLIPS_RADIAL_HPP
