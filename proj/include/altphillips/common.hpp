#ifndef ALTPHILLIPS_COMMON_HPP
#define ALTPHILLIPS_COMMON_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

/// Shared small utilities: grids, thread control, hashing, formatting.
namespace altphillips {

inline constexpr double pi = std::numbers::pi_v<double>;

/// Thrown when inputs violate a documented precondition.
struct invalid_argument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an iterative method fails to converge or an ODE solve breaks down.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Surface area of the unit sphere S^{n-1} in R^n.
inline double sphere_area(int n)
{
    if (n < 1) throw invalid_argument("sphere_area: n >= 1 required");
    return 2.0 * std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n);
}

/// n log-spaced points on [a, b], a, b > 0.
inline std::vector<double> logspace(double a, double b, int n)
{
    if (!(a > 0.0) || !(b > 0.0) || n < 2)
        throw invalid_argument("logspace: positive endpoints and n >= 2 required");
    std::vector<double> g(n);
    const double la = std::log(a), lb = std::log(b);
    for (int i = 0; i < n; ++i) g[i] = std::exp(la + (lb - la) * i / (n - 1));
    return g;
}

/// n uniformly spaced points on [a, b].
inline std::vector<double> linspace(double a, double b, int n)
{
    if (n < 2) throw invalid_argument("linspace: n >= 2 required");
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
    return g;
}

/// n points on (a, b] graded toward a: a + (b-a) * (i/n)^power, i = 1..n.
inline std::vector<double> graded_grid(double a, double b, int n, double power = 2.0)
{
    if (n < 1 || !(b > a)) throw invalid_argument("graded_grid: need n >= 1 and b > a");
    std::vector<double> g(n);
    for (int i = 1; i <= n; ++i)
        g[i - 1] = a + (b - a) * std::pow(double(i) / n, power);
    return g;
}

/// Number of worker threads: PHILLIPS_THREADS caps hardware_concurrency.
inline unsigned thread_count()
{
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("PHILLIPS_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) hw = std::min<long>(hw, v);
    }
    return hw;
}

/// Deterministic parallel map over [0, n): each index writes only its own slot,
/// chunks are contiguous, so results are independent of the thread count.
template <class F>
void parallel_for(std::size_t n, F&& body)
{
    const unsigned nt = std::min<std::size_t>(thread_count(), n ? n : 1);
    if (nt <= 1 || n < 64) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nt);
    const std::size_t chunk = (n + nt - 1) / nt;
    for (unsigned t = 0; t < nt; ++t) {
        const std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

/// FNV-1a 64-bit hash, used for config fingerprints in output filenames.
inline std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

/// Shortest round-trip decimal text for a double (17 significant digits).
inline std::string format_g17(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace altphillips

#endif // ALTPHILLIPS_COMMON_HPP
