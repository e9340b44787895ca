#include "kamforge/normal_form.hpp"

#include "kamforge/errors.hpp"

#include <array>
#include <cmath>
#include <complex>

namespace kamforge {

namespace {

using cd = std::complex<double>;

// truncated complex bivariate series in (w, wbar), total degree <= 3
struct CSeries {
    std::array<std::array<cd, 4>, 4> c{};

    static CSeries var_w() {
        CSeries s;
        s.c[1][0] = 1.0;
        return s;
    }
    static CSeries var_wbar() {
        CSeries s;
        s.c[0][1] = 1.0;
        return s;
    }
    CSeries operator+(const CSeries& o) const {
        CSeries r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j + i < 4; ++j) r.c[i][j] = c[i][j] + o.c[i][j];
        return r;
    }
    CSeries operator-(const CSeries& o) const {
        CSeries r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j + i < 4; ++j) r.c[i][j] = c[i][j] - o.c[i][j];
        return r;
    }
    CSeries operator*(const CSeries& o) const {
        CSeries r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j + i < 4; ++j) {
                if (c[i][j] == cd(0.0)) continue;
                for (int k = 0; k + i < 4; ++k)
                    for (int l = 0; l + k + i + j < 4; ++l)
                        r.c[i + k][j + l] += c[i][j] * o.c[k][l];
            }
        return r;
    }
    CSeries scaled(cd a) const {
        CSeries r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j + i < 4; ++j) r.c[i][j] = a * c[i][j];
        return r;
    }
    /// the series of the complex conjugate: coefficients conjugated, (j,k)
    /// exponents swapped
    CSeries conjugated() const {
        CSeries r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j + i < 4; ++j) r.c[j][i] = std::conj(c[i][j]);
        return r;
    }
    /// substitute w -> a, wbar -> b (both with zero constant term)
    CSeries compose(const CSeries& a, const CSeries& b) const {
        CSeries ap[4], bp[4];
        ap[0].c[0][0] = 1.0;
        bp[0].c[0][0] = 1.0;
        for (int i = 1; i < 4; ++i) {
            ap[i] = ap[i - 1] * a;
            bp[i] = bp[i - 1] * b;
        }
        CSeries r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j + i < 4; ++j) {
                if (c[i][j] == cd(0.0)) continue;
                r = r + (ap[i] * bp[j]).scaled(c[i][j]);
            }
        return r;
    }
};

// complexify a pair of real displacement series: F = u + i v with
// dx = (z + zbar)/2, dy = -i (z - zbar)/2
CSeries complexify(const TruncSeries2& u, const TruncSeries2& v) {
    const CSeries X = (CSeries::var_w() + CSeries::var_wbar()).scaled(0.5);
    const CSeries Y = (CSeries::var_w() - CSeries::var_wbar()).scaled(cd(0.0, -0.5));
    CSeries xp[4], yp[4];
    xp[0].c[0][0] = 1.0;
    yp[0].c[0][0] = 1.0;
    for (int i = 1; i < 4; ++i) {
        xp[i] = xp[i - 1] * X;
        yp[i] = yp[i - 1] * Y;
    }
    CSeries f;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j + i < 4; ++j) {
            const cd coef(u.c[i][j], v.c[i][j]);
            if (coef == cd(0.0)) continue;
            f = f + (xp[i] * yp[j]).scaled(coef);
        }
    return f;
}

} // namespace

TwistCoefficients twist_coefficient_from_jet(const Jet2& jet, double resonance_tol) {
    const Jacobian2 A = jet.linear();
    const double tr = A.trace();
    if (!(std::fabs(tr) < 2.0))
        throw Error(ErrorCode::DomainError,
                    "fixed point is not elliptic: |trace| = " + fmt17(std::fabs(tr)));

    // linear normalization: C = [v_r, -v_i] from an eigenvector of the
    // rotation eigenvalue, rescaled to det C = 1
    double ca = 0.5 * tr;
    double sa = std::sqrt(std::max(0.0, 1.0 - ca * ca));
    double vr1, vr2, vi1, vi2;
    auto eigen_columns = [&](double s) {
        if (std::fabs(A.m12) > std::fabs(A.m21)) {
            vr1 = A.m12;
            vr2 = ca - A.m11;
            vi1 = 0.0;
            vi2 = s;
        } else {
            vr1 = ca - A.m22;
            vr2 = A.m21;
            vi1 = s;
            vi2 = 0.0;
        }
    };
    eigen_columns(sa);
    double det = vr1 * (-vi2) - (-vi1) * vr2;
    if (det < 0.0) {
        sa = -sa;
        eigen_columns(sa);
        det = vr1 * (-vi2) - (-vi1) * vr2;
    }
    if (!(det > 0.0))
        throw Error(ErrorCode::DomainError, "eigenvector normalization failed");
    const double scale = 1.0 / std::sqrt(det);
    const Jacobian2 C{vr1 * scale, -vi1 * scale, vr2 * scale, -vi2 * scale};
    const Jacobian2 Ci = C.inverse();

    // conjugate the jet by C (linear change of variables)
    const TruncSeries2 in_x =
        TruncSeries2::var_x().scaled(C.m11) + TruncSeries2::var_y().scaled(C.m12);
    const TruncSeries2 in_y =
        TruncSeries2::var_x().scaled(C.m21) + TruncSeries2::var_y().scaled(C.m22);
    const TruncSeries2 gu = jet.u.compose(in_x, in_y);
    const TruncSeries2 gv = jet.v.compose(in_x, in_y);
    const TruncSeries2 nu = gu.scaled(Ci.m11) + gv.scaled(Ci.m12);
    const TruncSeries2 nv = gu.scaled(Ci.m21) + gv.scaled(Ci.m22);

    CSeries F = complexify(nu, nv);
    const cd lambda(ca, sa);

    // root-of-unity resonances up to order 4 obstruct the normal form
    cd lp = lambda;
    for (int m = 1; m <= 4; ++m) {
        if (std::abs(lp - 1.0) < resonance_tol)
            throw Error(ErrorCode::ResonantEigenvalue,
                        "e^{i alpha0} is a root of unity of order " + std::to_string(m));
        lp *= lambda;
    }
    if (std::abs(F.c[1][0] - lambda) > 1e-9 || std::abs(F.c[0][1]) > 1e-9)
        throw Error(ErrorCode::NonConvergent,
                    "linear normalization defect " + fmt17(std::abs(F.c[0][1])));

    // remove the quadratic terms: T(w) = w + phi(w, wbar),
    // phi_{jk} = F_{jk} / (lambda^{j-k} - lambda)
    CSeries phi;
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k + j < 3; ++k) {
            if (j + k != 2) continue;
            const cd denom = std::pow(lambda, j - k) - lambda;
            if (std::abs(denom) < resonance_tol)
                throw Error(ErrorCode::ResonantEigenvalue,
                            "quadratic homological divisor vanished");
            phi.c[j][k] = F.c[j][k] / denom;
        }
    }
    const CSeries T = CSeries::var_w() + phi;
    const CSeries Tbar = T.conjugated();
    // T^{-1} to degree 3 by two fixed-point sweeps
    CSeries W = CSeries::var_w() - phi;
    for (int it = 0; it < 2; ++it) {
        W = CSeries::var_w() - phi.compose(W, W.conjugated());
    }
    const CSeries G = W.compose(F.compose(T, Tbar), F.compose(T, Tbar).conjugated());

    const cd c21 = G.c[2][1];
    const cd mu = std::conj(lambda) * c21;

    TwistCoefficients out;
    out.alpha0 = std::atan2(sa, ca);
    out.alpha1 = mu.imag();
    out.radial_defect = std::fabs(mu.real());
    return out;
}

TwistCoefficients twist_coefficient(const SymplecticMap& map, const PhasePoint& fixed_point,
                                    double fixed_tol, double resonance_tol) {
    const PhasePoint img = map.eval(fixed_point);
    const double dev = PhasePoint::distance(img, fixed_point);
    if (dev > fixed_tol)
        throw Error(ErrorCode::DomainError,
                    "point is not fixed: |f(p) - p| = " + fmt17(dev));
    return twist_coefficient_from_jet(map.jet3(fixed_point), resonance_tol);
}

} // namespace kamforge
