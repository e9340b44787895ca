#ifndef KAMFORGE_PHASE_HPP
#define KAMFORGE_PHASE_HPP

#include "kamforge/common.hpp"

#include <complex>

namespace kamforge {

/// Point on S^1 = R/Z; the representative is always kept in [0,1).
class CirclePoint {
public:
    CirclePoint() = default;
    explicit CirclePoint(double x) : v_(wrap01(x)) {}

    double value() const { return v_; }

    CirclePoint shifted(double d) const { return CirclePoint(v_ + d); }

    /// min(|a-b|, 1-|a-b|), in [0, 1/2]
    static double distance(CirclePoint a, CirclePoint b) {
        return circle_distance(a.v_, b.v_);
    }
    /// signed difference a-b in (-1/2, 1/2]
    static double delta(CirclePoint a, CirclePoint b) {
        return circle_delta(a.v_, b.v_);
    }

private:
    double v_ = 0.0;
};

enum class Space { Torus, Cylinder };

/// Point of T^2 (both coordinates mod 1) or the cylinder S^1 x R.
struct PhasePoint {
    PhasePoint() = default;
    PhasePoint(double px, double py, Space s)
        : x(px), y(s == Space::Torus ? wrap01(py) : py), space(s) {}

    CirclePoint x;
    double y = 0.0;
    Space space = Space::Cylinder;

    static double distance(const PhasePoint& a, const PhasePoint& b) {
        double dx = CirclePoint::distance(a.x, b.x);
        double dy = a.space == Space::Torus ? circle_distance(a.y, b.y)
                                            : std::fabs(a.y - b.y);
        return std::sqrt(dx * dx + dy * dy);
    }
};

/// 2x2 real matrix, the derivative of a map between phase points.
struct Jacobian2 {
    double m11 = 1.0, m12 = 0.0, m21 = 0.0, m22 = 1.0;

    double det() const { return m11 * m22 - m12 * m21; }
    double trace() const { return m11 + m22; }

    Jacobian2 operator*(const Jacobian2& o) const {
        return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
                m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
    }
    Jacobian2 inverse() const {
        const double d = det();
        return {m22 / d, -m12 / d, -m21 / d, m11 / d};
    }
    static Jacobian2 identity() { return {}; }

    void apply(double& vx, double& vy) const {
        const double nx = m11 * vx + m12 * vy;
        vy = m21 * vx + m22 * vy;
        vx = nx;
    }
};

/// Accumulated integer lift winding of an orbit segment.
struct Winding {
    long x = 0;
    long y = 0;
    Winding& operator+=(const Winding& o) {
        x += o.x;
        y += o.y;
        return *this;
    }
};

struct LiftedPoint {
    PhasePoint p;
    Winding winding;
};

struct IterateResult {
    PhasePoint p;
    Jacobian2 jacobian;
    Winding winding;
};

/// Point with complexified coordinates, for strip evaluation.
struct ComplexPoint {
    std::complex<double> x; // in C/Z, real part kept in [0,1)
    std::complex<double> y;
};

/// Axis-aligned phase-space window (x is an arc, possibly the whole circle).
struct Region {
    double x0 = 0.0, x1 = 1.0;
    double y0 = -1.0, y1 = 1.0;
    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    bool contains(const PhasePoint& p) const {
        if (p.y < y0 || p.y > y1) return false;
        if (x1 - x0 >= 1.0) return true;
        double dx = wrap01(p.x.value() - x0);
        return dx <= x1 - x0;
    }
};

/// Polynomial smoothstep of order 7 (C^3 at both seams).
inline double smoothstep7(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return ((( -20.0 * t + 70.0) * t - 84.0) * t + 35.0) * t * t * t * t;
}
inline double smoothstep7_d1(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double u = t * (1.0 - t);
    return 140.0 * u * u * u;
}
inline double smoothstep7_d2(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return (((-840.0 * t + 2100.0) * t - 1680.0) * t + 420.0) * t * t;
}
inline double smoothstep7_d3(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return t * (840.0 + t * (-5040.0 + t * (8400.0 - 4200.0 * t)));
}

} // namespace kamforge

#endif
