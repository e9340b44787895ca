#ifndef KAMFORGE_COMMON_HPP
#define KAMFORGE_COMMON_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace kamforge {

inline constexpr double two_pi = 6.283185307179586476925286766559;

/// Wrap a real number to the fundamental domain [0,1).
inline double wrap01(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r -= 1.0;   // floor rounding at negative epsilons
    if (r < 0.0) r += 1.0;
    return r;
}

/// Signed circle difference a-b reduced to (-1/2, 1/2].
inline double circle_delta(double a, double b) {
    double d = a - b;
    d -= std::round(d);
    if (d <= -0.5) d += 1.0;
    return d;
}

/// Circle distance in [0, 1/2].
inline double circle_distance(double a, double b) {
    return std::fabs(circle_delta(a, b));
}

/// Format a double with 17 significant digits (lossless decimal round-trip).
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

/// Number of worker threads used by parallel loops (overridable).
int worker_threads();
void set_worker_threads(int n);

/// Deterministic parallel loop: body(i) for i in [0,n). Results must be
/// written to pre-sized slots so the merge order is independent of timing.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace kamforge

#endif
