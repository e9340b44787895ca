#ifndef KAMFORGE_JET_HPP
#define KAMFORGE_JET_HPP

#include "kamforge/phase.hpp"

#include <array>

namespace kamforge {

/// Bivariate Taylor polynomial in local displacements (dx,dy),
/// truncated at total degree 3.
struct TruncSeries2 {
    // c[i][j]: coefficient of dx^i dy^j, i+j <= 3
    std::array<std::array<double, 4>, 4> c{};

    static TruncSeries2 zero() { return {}; }
    static TruncSeries2 var_x() {
        TruncSeries2 s;
        s.c[1][0] = 1.0;
        return s;
    }
    static TruncSeries2 var_y() {
        TruncSeries2 s;
        s.c[0][1] = 1.0;
        return s;
    }
    static TruncSeries2 constant(double v) {
        TruncSeries2 s;
        s.c[0][0] = v;
        return s;
    }
    /// 1-D Taylor data (f, f', f'', f''') applied to dx or dy.
    static TruncSeries2 univariate(const std::array<double, 4>& taylor, bool in_x);

    TruncSeries2 operator+(const TruncSeries2& o) const;
    TruncSeries2 operator-(const TruncSeries2& o) const;
    TruncSeries2 operator*(const TruncSeries2& o) const; // truncated product
    TruncSeries2 scaled(double a) const;
    /// reciprocal 1/this; requires nonzero constant term
    TruncSeries2 reciprocal() const;
    /// substitute (dx,dy) -> (a(dx,dy), b(dx,dy)); a,b must have zero constant
    TruncSeries2 compose(const TruncSeries2& a, const TruncSeries2& b) const;

    double linear_x() const { return c[1][0]; }
    double linear_y() const { return c[0][1]; }
};

/// Degree-3 jet of a map at a point: image point plus displacement series
/// (both with zero constant term).
struct Jet2 {
    PhasePoint image;
    TruncSeries2 u; // x-displacement of the image
    TruncSeries2 v; // y-displacement of the image

    Jacobian2 linear() const {
        return {u.c[1][0], u.c[0][1], v.c[1][0], v.c[0][1]};
    }
    /// jet of (other after this): other's jet taken at this->image
    static Jet2 chain(const Jet2& first, const Jet2& second);
    /// inverse jet; linear part must be invertible
    Jet2 inverse_at(const PhasePoint& preimage) const;
    static Jet2 identity_at(const PhasePoint& p);
};

} // namespace kamforge

#endif
