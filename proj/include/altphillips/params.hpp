#ifndef ALTPHILLIPS_PARAMS_HPP
#define ALTPHILLIPS_PARAMS_HPP

#include <cmath>
#include <optional>

#include "common.hpp"

/// Derived constants of the homogeneity-degree family and the radial
/// stability discriminant.
namespace altphillips {

/// All derived constants for a given (dimension, exponent) pair.
///
/// The energy density is |grad u|^2 / 2 + u^gamma on {u > 0} with
/// gamma in (0, 1); beta = 2/(2 - gamma) is the homogeneity of the blow-up
/// profiles and kappa = 4(1 - gamma)/(2 - gamma) the small parameter used
/// by the cone construction (kappa -> 0 as gamma -> 1).
struct Params {
    int d = 0;            ///< dimension the radial profile lives in
    double gamma = 0.0;   ///< exponent of the potential term
    double beta = 0.0;    ///< 2 / (2 - gamma)
    double kappa = 0.0;   ///< 4 (1 - gamma) / (2 - gamma)
    double c_rad = 0.0;   ///< coefficient of the radial profile c r^beta
    double A_coef = 0.0;  ///< coefficient of the 1-d profile A (x_1)_+^beta
};

inline double gamma_from_kappa(double kappa)
{
    if (!(kappa >= 0.0) || !(kappa < 2.0))
        throw invalid_argument("gamma_from_kappa: kappa in [0, 2) required");
    return (4.0 - 2.0 * kappa) / (4.0 - kappa);
}

inline double kappa_from_gamma(double gamma)
{
    if (!(gamma > 0.0) || !(gamma <= 1.0))
        throw invalid_argument("kappa_from_gamma: gamma in (0, 1] required");
    return 4.0 * (1.0 - gamma) / (2.0 - gamma);
}

/// Build the full constant set from (d, gamma). Powers with exponent
/// 1/(2-gamma) are computed as exp(log(.)/(2-gamma)) to keep full accuracy
/// for gamma near 1.
inline Params make_params(int d, double gamma)
{
    if (d < 3) throw invalid_argument("make_params: d >= 3 required");
    if (!(gamma > 0.0) || !(gamma <= 1.0))
        throw invalid_argument("make_params: gamma in (0, 1] required");
    Params p;
    p.d = d;
    p.gamma = gamma;
    p.beta = 2.0 / (2.0 - gamma);
    p.kappa = kappa_from_gamma(gamma);
    // c_rad^{2-gamma} = gamma / (beta (d + beta - 2)),  A^{2-gamma} = 2 / beta^2.
    p.c_rad = std::exp(std::log(gamma / (p.beta * (d + p.beta - 2.0))) / (2.0 - gamma));
    p.A_coef = std::exp(std::log(2.0 / (p.beta * p.beta)) / (2.0 - gamma));
    return p;
}

inline Params make_params_kappa(int d, double kappa)
{
    return make_params(d, gamma_from_kappa(kappa));
}

/// Discriminant of the linearized radial operator: the radial cone is
/// stable (in the sense of the second variation) iff this is >= 0.
inline double discriminant(int d, double gamma)
{
    if (d < 3) throw invalid_argument("discriminant: d >= 3 required");
    if (!(gamma > 0.0) || !(gamma <= 1.0))
        throw invalid_argument("discriminant: gamma in (0, 1] required");
    const double beta = 2.0 / (2.0 - gamma);
    return (d - 2.0) * (d - 2.0) - 4.0 * beta * (d + beta - 2.0) * (1.0 - gamma);
}

inline bool is_stable(int d, double gamma) { return discriminant(d, gamma) >= 0.0; }

/// Smallest gamma* in (0,1) with discriminant(d, gamma) >= 0 for all
/// gamma >= gamma*: bisection on the sign change, |interval| <= tol.
/// Returns nullopt when the discriminant is nonnegative on all of (0, 1)
/// (large d), so every exponent is stable.
inline std::optional<double> stability_threshold(int d, double tol = 1e-12)
{
    if (d < 3) throw invalid_argument("stability_threshold: d >= 3 required");
    // Scan for a sign change; Delta(d, gamma) -> (d-2)^2 >= 0 as gamma -> 1.
    double lo = 1e-8;
    if (discriminant(d, lo) >= 0.0) {
        // check a fine grid to be safe against an interior dip
        bool dips = false;
        for (int i = 1; i < 4096; ++i) {
            if (discriminant(d, i / 4096.0) < 0.0) {
                dips = true;
                lo = i / 4096.0;
                break;
            }
        }
        if (!dips) return std::nullopt;
    }
    double hi = 1.0 - 1e-15;
    if (discriminant(d, hi) < 0.0) return std::nullopt; // should not happen for d >= 2
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (discriminant(d, mid) < 0.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace altphillips

#endif // ALTPHILLIPS_PARAMS_HPP
