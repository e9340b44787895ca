#include "kamforge/jet.hpp"

#include "kamforge/errors.hpp"

namespace kamforge {

TruncSeries2 TruncSeries2::univariate(const std::array<double, 4>& taylor, bool in_x) {
    TruncSeries2 s;
    // taylor = (f, f', f'', f''') at the expansion point
    const double c0 = taylor[0];
    const double c1 = taylor[1];
    const double c2 = taylor[2] / 2.0;
    const double c3 = taylor[3] / 6.0;
    if (in_x) {
        s.c[0][0] = c0;
        s.c[1][0] = c1;
        s.c[2][0] = c2;
        s.c[3][0] = c3;
    } else {
        s.c[0][0] = c0;
        s.c[0][1] = c1;
        s.c[0][2] = c2;
        s.c[0][3] = c3;
    }
    return s;
}

TruncSeries2 TruncSeries2::operator+(const TruncSeries2& o) const {
    TruncSeries2 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j + i < 4; ++j) r.c[i][j] = c[i][j] + o.c[i][j];
    return r;
}

TruncSeries2 TruncSeries2::operator-(const TruncSeries2& o) const {
    TruncSeries2 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j + i < 4; ++j) r.c[i][j] = c[i][j] - o.c[i][j];
    return r;
}

TruncSeries2 TruncSeries2::operator*(const TruncSeries2& o) const {
    TruncSeries2 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j + i < 4; ++j) {
            if (c[i][j] == 0.0) continue;
            for (int k = 0; k + i < 4; ++k)
                for (int l = 0; l + k + i + j < 4; ++l) {
                    r.c[i + k][j + l] += c[i][j] * o.c[k][l];
                }
        }
    return r;
}

TruncSeries2 TruncSeries2::scaled(double a) const {
    TruncSeries2 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j + i < 4; ++j) r.c[i][j] = a * c[i][j];
    return r;
}

TruncSeries2 TruncSeries2::reciprocal() const {
    const double a0 = c[0][0];
    if (a0 == 0.0)
        throw Error(ErrorCode::DomainError, "series reciprocal of zero constant term");
    TruncSeries2 u = *this;
    u.c[0][0] = 0.0;
    u = u.scaled(1.0 / a0);
    // 1/(a0(1+u)) = (1 - u + u^2 - u^3)/a0
    TruncSeries2 r = constant(1.0) - u + u * u - u * u * u;
    return r.scaled(1.0 / a0);
}

TruncSeries2 TruncSeries2::compose(const TruncSeries2& a, const TruncSeries2& b) const {
    if (a.c[0][0] != 0.0 || b.c[0][0] != 0.0)
        throw Error(ErrorCode::DomainError, "series composition requires zero constant terms");
    // powers of a and b up to 3
    TruncSeries2 ap[4], bp[4];
    ap[0] = constant(1.0);
    bp[0] = constant(1.0);
    for (int i = 1; i < 4; ++i) {
        ap[i] = ap[i - 1] * a;
        bp[i] = bp[i - 1] * b;
    }
    TruncSeries2 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j + i < 4; ++j) {
            if (c[i][j] == 0.0) continue;
            r = r + (ap[i] * bp[j]).scaled(c[i][j]);
        }
    return r;
}

Jet2 Jet2::chain(const Jet2& first, const Jet2& second) {
    Jet2 r;
    r.image = second.image;
    r.u = second.u.compose(first.u, first.v);
    r.v = second.v.compose(first.u, first.v);
    return r;
}

Jet2 Jet2::identity_at(const PhasePoint& p) {
    Jet2 j;
    j.image = p;
    j.u = TruncSeries2::var_x();
    j.v = TruncSeries2::var_y();
    return j;
}

Jet2 Jet2::inverse_at(const PhasePoint& preimage) const {
    // solve (U,V) with F(U,V) = (dx,dy); fixed-point in series space
    const Jacobian2 A = linear();
    const double d = A.det();
    if (std::fabs(d) < 1e-14)
        throw Error(ErrorCode::DomainError, "jet inversion: singular linear part");
    const Jacobian2 Ai = A.inverse();
    // nonlinear remainder N = F - A
    TruncSeries2 nu = u, nv = v;
    nu.c[1][0] -= A.m11;
    nu.c[0][1] -= A.m12;
    nv.c[1][0] -= A.m21;
    nv.c[0][1] -= A.m22;
    TruncSeries2 U = TruncSeries2::var_x().scaled(Ai.m11) + TruncSeries2::var_y().scaled(Ai.m12);
    TruncSeries2 V = TruncSeries2::var_x().scaled(Ai.m21) + TruncSeries2::var_y().scaled(Ai.m22);
    for (int it = 0; it < 3; ++it) {
        TruncSeries2 rx = TruncSeries2::var_x() - nu.compose(U, V);
        TruncSeries2 ry = TruncSeries2::var_y() - nv.compose(U, V);
        U = rx.scaled(Ai.m11) + ry.scaled(Ai.m12);
        V = rx.scaled(Ai.m21) + ry.scaled(Ai.m22);
    }
    Jet2 r;
    r.image = preimage;
    r.u = U;
    r.v = V;
    return r;
}

} // namespace kamforge
