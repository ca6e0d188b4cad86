#ifndef ALTPHILLIPS_INTEGRATE_HPP
#define ALTPHILLIPS_INTEGRATE_HPP

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "common.hpp"

/// Deterministic ODE integration (embedded Dormand-Prince 5(4) pair with
/// cubic-Hermite dense output) and adaptive Gauss-Kronrod quadrature.
namespace altphillips {

/// Why an integration run stopped.
enum class StopReason {
    ReachedEnd,      ///< integrated to t_end
    ValidityStopped, ///< the validity predicate rejected the state
    StepUnderflow    ///< step size shrank below the representable minimum
};

/// Accepted-step trajectory with cubic Hermite interpolation between knots.
template <class Real, std::size_t N>
struct Trajectory {
    using State = std::array<Real, N>;

    std::vector<Real> t;
    std::vector<State> y;
    std::vector<State> f; ///< derivative at each knot
    StopReason stop = StopReason::ReachedEnd;
    std::size_t n_accepted = 0;
    std::size_t n_rejected = 0;

    bool forward() const { return t.size() < 2 || t.back() >= t.front(); }
    Real t_begin() const { return t.front(); }
    Real t_end() const { return t.back(); }

    /// Index of the knot interval containing s (clamped to the span).
    std::size_t locate(Real s) const
    {
        const bool fwd = forward();
        std::size_t lo = 0, hi = t.size() - 1;
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            if (fwd ? (t[mid] <= s) : (t[mid] >= s)) lo = mid;
            else hi = mid;
        }
        return lo;
    }

    /// Value and derivative at s by cubic Hermite interpolation.
    void eval(Real s, State& ys, State* fs = nullptr) const
    {
        if (t.size() == 1 || s == t.front()) {
            ys = y.front();
            if (fs) *fs = f.front();
            return;
        }
        const std::size_t i = locate(s);
        const Real h = t[i + 1] - t[i];
        const Real u = (s - t[i]) / h;
        const Real u2 = u * u, u3 = u2 * u;
        const Real h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
        const Real h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
        const Real d00 = (6 * u2 - 6 * u) / h, d10 = 3 * u2 - 4 * u + 1;
        const Real d01 = (6 * u - 6 * u2) / h, d11 = 3 * u2 - 2 * u;
        for (std::size_t k = 0; k < N; ++k) {
            ys[k] = h00 * y[i][k] + h10 * h * f[i][k] + h01 * y[i + 1][k] + h11 * h * f[i + 1][k];
            if (fs)
                (*fs)[k] = d00 * y[i][k] + d10 * f[i][k] + d01 * y[i + 1][k] + d11 * f[i + 1][k];
        }
    }

    State operator()(Real s) const
    {
        State ys;
        eval(s, ys);
        return ys;
    }
};

/// Options for integrate().
template <class Real>
struct OdeOptions {
    Real rtol = Real(1e-12);
    Real atol = Real(1e-14);
    Real max_step_fraction = Real(1) / Real(50); ///< max |h| as a fraction of the interval
    Real initial_step = Real(0);                 ///< 0 = auto
    std::size_t max_steps = 2'000'000;
};

/// Integrate y' = rhs(t, y) from t0 to t1 (either direction) with the
/// Dormand-Prince 5(4) embedded pair. Integration stops early, with a flag,
/// as soon as a proposed state fails `valid` (the last valid knot is kept).
template <class Real, std::size_t N, class Rhs,
          class Valid = bool (*)(Real, const std::array<Real, N>&)>
Trajectory<Real, N> integrate(
    Rhs&& rhs, Real t0, const std::array<Real, N>& y0, Real t1,
    const OdeOptions<Real>& opt = {},
    Valid valid = [](Real, const std::array<Real, N>&) { return true; })
{
    using State = std::array<Real, N>;
    // Dormand-Prince RK5(4)7M tableau.
    static const Real c[7] = {Real(0), Real(1) / 5, Real(3) / 10, Real(4) / 5,
                              Real(8) / 9, Real(1), Real(1)};
    static const Real a[7][6] = {
        {},
        {Real(1) / 5},
        {Real(3) / 40, Real(9) / 40},
        {Real(44) / 45, Real(-56) / 15, Real(32) / 9},
        {Real(19372) / 6561, Real(-25360) / 2187, Real(64448) / 6561, Real(-212) / 729},
        {Real(9017) / 3168, Real(-355) / 33, Real(46732) / 5247, Real(49) / 176,
         Real(-5103) / 18656},
        {Real(35) / 384, Real(0), Real(500) / 1113, Real(125) / 192, Real(-2187) / 6784,
         Real(11) / 84}};
    static const Real b5[7] = {Real(35) / 384, Real(0), Real(500) / 1113, Real(125) / 192,
                               Real(-2187) / 6784, Real(11) / 84, Real(0)};
    static const Real b4[7] = {Real(5179) / 57600, Real(0), Real(7571) / 16695,
                               Real(393) / 640, Real(-92097) / 339200, Real(187) / 2100,
                               Real(1) / 40};

    const Real dir = (t1 >= t0) ? Real(1) : Real(-1);
    const Real span = std::abs(t1 - t0);
    if (!(span > Real(0))) throw invalid_argument("integrate: empty interval");
    if (!valid(t0, y0)) throw invalid_argument("integrate: initial state invalid");

    Trajectory<Real, N> traj;
    State y = y0, fy;
    rhs(t0, y, fy);
    traj.t.push_back(t0);
    traj.y.push_back(y);
    traj.f.push_back(fy);

    const Real hmax = span * opt.max_step_fraction;
    Real h = (opt.initial_step > Real(0)) ? std::min(opt.initial_step, hmax)
                                          : std::min(hmax, span * Real(1e-4));
    Real t = t0;
    std::array<State, 7> k;
    k[0] = fy;

    for (std::size_t step = 0; step < opt.max_steps; ++step) {
        if (dir * (t - t1) >= Real(0)) {
            traj.stop = StopReason::ReachedEnd;
            return traj;
        }
        h = std::min(h, std::abs(t1 - t));
        const Real hmin = std::abs(t) * std::numeric_limits<Real>::epsilon() * Real(16) +
                          std::numeric_limits<Real>::min();
        if (h < hmin) {
            traj.stop = StopReason::StepUnderflow;
            return traj;
        }
        const Real hs = dir * h;
        bool stage_ok = true;
        State ytmp, ynew, err{};
        for (int i = 1; i < 7 && stage_ok; ++i) {
            for (std::size_t n = 0; n < N; ++n) {
                Real acc = Real(0);
                for (int j = 0; j < i; ++j) acc += a[i][j] * k[j][n];
                ytmp[n] = y[n] + hs * acc;
            }
            if (!valid(t + c[i] * hs, ytmp)) {
                stage_ok = false;
                break;
            }
            rhs(t + c[i] * hs, ytmp, k[i]);
        }
        if (!stage_ok) {
            // A stage left the admissible set: shrink toward the boundary.
            h *= Real(0.5);
            if (h < hmin) {
                traj.stop = StopReason::ValidityStopped;
                return traj;
            }
            ++traj.n_rejected;
            continue;
        }
        Real errnorm = Real(0);
        for (std::size_t n = 0; n < N; ++n) {
            Real y5 = Real(0), y4 = Real(0);
            for (int j = 0; j < 7; ++j) {
                y5 += b5[j] * k[j][n];
                y4 += b4[j] * k[j][n];
            }
            ynew[n] = y[n] + hs * y5;
            const Real sc = opt.atol + opt.rtol * std::max(std::abs(y[n]), std::abs(ynew[n]));
            const Real e = hs * (y5 - y4) / sc;
            errnorm = std::max(errnorm, std::abs(e));
        }
        if (errnorm <= Real(1)) {
            if (!valid(t + hs, ynew)) {
                h *= Real(0.5);
                if (h < hmin) {
                    traj.stop = StopReason::ValidityStopped;
                    return traj;
                }
                ++traj.n_rejected;
                continue;
            }
            t += hs;
            y = ynew;
            rhs(t, y, k[0]); // FSAL would reuse k[6]; recompute keeps the code simple
            traj.t.push_back(t);
            traj.y.push_back(y);
            traj.f.push_back(k[0]);
            ++traj.n_accepted;
            const Real fac = std::min(Real(5), std::max(Real(0.2),
                Real(0.9) * std::pow(errnorm > Real(0) ? errnorm : Real(1e-30), Real(-0.2))));
            h = std::min(hmax, h * fac);
        } else {
            ++traj.n_rejected;
            h *= std::max(Real(0.2), Real(0.9) * std::pow(errnorm, Real(-0.2)));
        }
    }
    throw numerical_error("integrate: max_steps exceeded");
}

namespace detail {

/// 15-point Gauss-Kronrod pair on [-1, 1] (7-point Gauss embedded).
inline const double gk15_x[15] = {
    -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730, -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245, 0.0,
    0.207784955007898467600689403773245,  0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,  0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,  0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};
inline const double gk15_wk[15] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};
inline const double gk15_wg[7] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
    0.381830050505118944950369775488975, 0.279705391489276667901467771423780,
    0.129484966168869693270611432679082};

template <class F>
void gk15(F&& f, double a, double b, double& value, double& error)
{
    const double h = 0.5 * (b - a), m = 0.5 * (a + b);
    double k = 0.0, g = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double fx = f(m + h * gk15_x[i]);
        k += gk15_wk[i] * fx;
        if (i % 2 == 1) g += gk15_wg[i / 2] * fx;
    }
    value = k * h;
    error = std::abs((k - g) * h);
}

template <class F>
double quad_rec(F&& f, double a, double b, double tol, int depth)
{
    double v, e;
    gk15(f, a, b, v, e);
    if (e <= tol || depth >= 60) return v;
    const double m = 0.5 * (a + b);
    return quad_rec(f, a, m, 0.5 * tol, depth + 1) + quad_rec(f, m, b, 0.5 * tol, depth + 1);
}

} // namespace detail

/// Adaptive Gauss-Kronrod quadrature of f over [a, b]. Endpoints are never
/// evaluated, so integrable endpoint singularities are handled directly.
template <class F>
double quadrature(F&& f, double a, double b, double tol = 1e-12)
{
    if (a == b) return 0.0;
    if (a > b) return -quadrature(f, b, a, tol);
    // First pass to scale the absolute tolerance.
    double v, e;
    detail::gk15(f, a, b, v, e);
    const double abstol = tol * std::max(1.0, std::abs(v));
    if (e <= abstol) return v;
    const double m = 0.5 * (a + b);
    return detail::quad_rec(f, a, m, 0.5 * abstol, 1) +
           detail::quad_rec(f, m, b, 0.5 * abstol, 1);
}

} // namespace altphillips

#endif // ALTPHILLIPS_INTEGRATE_HPP
