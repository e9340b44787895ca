#include "kamforge/hamiltonian.hpp"

#include "kamforge/errors.hpp"

#include <cmath>

namespace kamforge {

// --------------------------------------------------------------------------
// cutoff chi: even, == 1 on |y| <= delta/2, == 0 on |y| >= delta/2 + width
// --------------------------------------------------------------------------

double bump_cutoff(double y, double delta, double width) {
    const double a = std::fabs(y);
    return 1.0 - smoothstep7((a - 0.5 * delta) / width);
}

double bump_cutoff_d1(double y, double delta, double width) {
    const double a = std::fabs(y);
    const double d = -smoothstep7_d1((a - 0.5 * delta) / width) / width;
    return y < 0.0 ? -d : d;
}

double bump_cutoff_d2(double y, double delta, double width) {
    const double a = std::fabs(y);
    return -smoothstep7_d2((a - 0.5 * delta) / width) / (width * width);
}

// --------------------------------------------------------------------------
// HamiltonianField evaluation
// --------------------------------------------------------------------------

double HamiltonianField::value(double x, double y) const {
    struct V {
        double x, y;
        double operator()(const XProfile& f) const { return f.H.eval(x); }
        double operator()(const YTrig& f) const { return f.H.eval(y); }
        double operator()(const YPoly& f) const {
            double v = 0.0;
            for (std::size_t j = f.coeffs.size(); j-- > 0;) v = v * y + f.coeffs[j];
            return v;
        }
        double operator()(const CurveFollowing& f) const {
            return f.speed.eval(x) * std::sin(two_pi * (y - f.g.eval(x))) / two_pi;
        }
        double operator()(const Bump& f) const {
            return -f.h.eval(x) * bump_cutoff(y, f.delta, f.width);
        }
        double operator()(const Generic& f) const { return f.H(x, y); }
    };
    return std::visit(V{x, y}, node_);
}

void HamiltonianField::gradient(double x, double y, double& hx, double& hy) const {
    if (const auto* f = std::get_if<XProfile>(&node_)) {
        hx = f->H.eval_d(x).second;
        hy = 0.0;
    } else if (const auto* f = std::get_if<YTrig>(&node_)) {
        hx = 0.0;
        hy = f->H.eval_d(y).second;
    } else if (const auto* f = std::get_if<YPoly>(&node_)) {
        hx = 0.0;
        double v = 0.0;
        for (std::size_t j = f->coeffs.size(); j-- > 1;)
            v = v * y + static_cast<double>(j) * f->coeffs[j];
        hy = v;
    } else if (const auto* f = std::get_if<CurveFollowing>(&node_)) {
        auto [w, dw] = f->speed.eval_d(x);
        auto [g, dg] = f->g.eval_d(x);
        const double ph = two_pi * (y - g);
        const double s = std::sin(ph), c = std::cos(ph);
        hx = dw * s / two_pi - w * dg * c;
        hy = w * c;
    } else if (const auto* f = std::get_if<Bump>(&node_)) {
        auto [h, dh] = f->h.eval_d(x);
        hx = -dh * bump_cutoff(y, f->delta, f->width);
        hy = -h * bump_cutoff_d1(y, f->delta, f->width);
    } else {
        const auto& gf = std::get<Generic>(node_);
        hx = gf.Hx(x, y);
        hy = gf.Hy(x, y);
    }
}

void HamiltonianField::hessian(double x, double y, double& hxx, double& hxy, double& hyy) const {
    if (const auto* f = std::get_if<XProfile>(&node_)) {
        hxx = f->H.eval_d2(x)[2];
        hxy = hyy = 0.0;
    } else if (const auto* f = std::get_if<YTrig>(&node_)) {
        hyy = f->H.eval_d2(y)[2];
        hxx = hxy = 0.0;
    } else if (const auto* f = std::get_if<YPoly>(&node_)) {
        hxx = hxy = 0.0;
        double v = 0.0;
        for (std::size_t j = f->coeffs.size(); j-- > 2;)
            v = v * y + static_cast<double>(j) * static_cast<double>(j - 1) * f->coeffs[j];
        hyy = v;
    } else if (const auto* f = std::get_if<CurveFollowing>(&node_)) {
        auto wd = f->speed.eval_d2(x);
        auto gd = f->g.eval_d2(x);
        const double w = wd[0], dw = wd[1], ddw = wd[2];
        const double g = gd[0], dg = gd[1], ddg = gd[2];
        const double ph = two_pi * (y - g);
        const double s = std::sin(ph), c = std::cos(ph);
        hxx = ddw * s / two_pi - 2.0 * dw * dg * c - w * ddg * c - two_pi * w * dg * dg * s;
        hxy = dw * c + two_pi * w * dg * s;
        hyy = -two_pi * w * s;
    } else if (const auto* f = std::get_if<Bump>(&node_)) {
        auto hd = f->h.eval_d2(x);
        hxx = -hd[2] * bump_cutoff(y, f->delta, f->width);
        hxy = -hd[1] * bump_cutoff_d1(y, f->delta, f->width);
        hyy = -hd[0] * bump_cutoff_d2(y, f->delta, f->width);
    } else {
        const auto& gf = std::get<Generic>(node_);
        hxx = gf.Hxx(x, y);
        hxy = gf.Hxy(x, y);
        hyy = gf.Hyy(x, y);
    }
}

// --------------------------------------------------------------------------
// Flow constructors
// --------------------------------------------------------------------------

SymplecticMap shear_flow(const TrigPoly& h, double t) {
    return SymplecticMap::vertical_shear(h.derivative().scaled(t));
}

SymplecticMap transversality_flow(int index, double t) {
    switch (index) {
        case 1: // H = cos(2 pi x): ydot = 2 pi sin(2 pi x)
            return SymplecticMap::vertical_shear(TrigPoly::sine(1, two_pi * t));
        case 2: // H = sin(2 pi x): ydot = -2 pi cos(2 pi x)
            return SymplecticMap::vertical_shear(TrigPoly::cosine(1, -two_pi * t));
        case 3: // H = cos(2 pi y): xdot = -2 pi sin(2 pi y)
            return SymplecticMap::horizontal_shear(TrigPoly::sine(1, -two_pi * t));
        case 4: // H = sin(2 pi y): xdot = 2 pi cos(2 pi y)
            return SymplecticMap::horizontal_shear(TrigPoly::cosine(1, two_pi * t));
        default:
            throw Error(ErrorCode::DomainError, "transversality flow index must be 1..4");
    }
}

HamiltonianField curve_following_hamiltonian(const TrigPoly& xi, const TrigPoly& g) {
    // w(x) = phix'(phix^{-1}(x)) with phix(z) = z + xi(z); fit on a fine grid
    const TrigPoly dxi = xi.derivative();
    if (xi.is_constant() || dxi.coeff_abs_sum() == 0.0) {
        return HamiltonianField::curve_following(TrigPoly(1.0), g);
    }
    const int n = std::max(256, 8 * std::max(xi.degree(), g.degree()));
    // check the diffeomorphism condition on the grid
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) {
        const double z = static_cast<double>(i) / n;
        const double dp = 1.0 + dxi.eval(z);
        if (dp <= 0.0)
            throw Error(ErrorCode::NotDiffeo,
                        "curve-following Hamiltonian requires min phix' > 0");
    }
    // sample w over a uniform grid in ambient x by inverting phix
    for (int i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) / n;
        double z = x;
        for (int it = 0; it < 64; ++it) {
            auto [v, dv] = xi.eval_d(z);
            const double step = (z + v - x) / (1.0 + dv);
            z -= step;
            if (std::fabs(step) <= 1e-15) break;
        }
        w[i] = 1.0 + dxi.eval(z);
    }
    return HamiltonianField::curve_following(TrigPoly::interpolate(w), g);
}

HamiltonianField bump_hamiltonian(const TrigPoly& h, double delta, double cutoff_width) {
    if (!(delta > 0.0) || !(cutoff_width > 0.0) || !(cutoff_width < delta / 2.0))
        throw Error(ErrorCode::DomainError, "bump cutoff requires 0 < width < delta/2");
    return HamiltonianField::bump(h, delta, cutoff_width);
}

SymplecticMap integrate_flow(const HamiltonianField& field, double t, IntegratorConfig config) {
    if (const auto* cf = std::get_if<HamiltonianField::CurveFollowing>(&field.node())) {
        const bool unit_speed = cf->speed.is_constant() && cf->speed.mean() == 1.0;
        if (unit_speed && cf->g.is_constant()) {
            // straight circle y = c: flow is (x + t cos(2 pi (y - c)), y)
            const double c = cf->g.mean();
            const double cc = std::cos(two_pi * c), ss = std::sin(two_pi * c);
            // t cos(2 pi (y-c)) = t cos(2 pi y) cos(2 pi c) + t sin(2 pi y) sin(2 pi c)
            TrigPoly u(0.0, {Harmonic{1, t * cc, t * ss}});
            return SymplecticMap::horizontal_shear(u);
        }
    }
    return SymplecticMap::flow_map(field, t, config);
}

} // namespace kamforge
