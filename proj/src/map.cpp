#include "kamforge/map.hpp"

#include "kamforge/errors.hpp"

#include <cmath>

namespace kamforge {

namespace {

// ---------------------------------------------------------------------------
// Hamiltonian flow integration: implicit midpoint with variational equations.
// The midpoint stage is solved by fixed-point iteration; the tangent update
// (I - h/2 B) M' = (I + h/2 B) M with B = DX(z_mid) keeps det M exact to
// rounding because B is trace-free.
// ---------------------------------------------------------------------------

struct FlowState {
    double x, y; // x unwrapped (lift)
    Jacobian2 M;
};

void field_velocity(const HamiltonianField& f, double x, double y, double& vx, double& vy) {
    double hx, hy;
    f.gradient(x, y, hx, hy);
    vx = hy;
    vy = -hx;
}

Jacobian2 field_dvel(const HamiltonianField& f, double x, double y) {
    double hxx, hxy, hyy;
    f.hessian(x, y, hxx, hxy, hyy);
    // D(vx,vy) = [[Hyx, Hyy], [-Hxx, -Hxy]]
    return {hxy, hyy, -hxx, -hxy};
}

void midpoint_integrate(const node::FlowMap& fm, FlowState& s, bool with_tangent) {
    const double t = fm.t;
    if (t == 0.0) return;
    const IntegratorConfig& cfg = fm.config;
    if (cfg.step <= 0.0 || cfg.inner_tol <= 0.0)
        throw Error(ErrorCode::DomainError, "integrator config requires positive step and tolerance");
    const long nsteps = std::max(1L, static_cast<long>(std::ceil(std::fabs(t) / cfg.step)));
    const double h = t / static_cast<double>(nsteps);
    for (long n = 0; n < nsteps; ++n) {
        double mx = s.x, my = s.y;
        double vx, vy;
        field_velocity(fm.field, mx, my, vx, vy);
        mx = s.x + 0.5 * h * vx;
        my = s.y + 0.5 * h * vy;
        bool converged = false;
        for (int it = 0; it < cfg.max_inner; ++it) {
            field_velocity(fm.field, mx, my, vx, vy);
            const double nx = s.x + 0.5 * h * vx;
            const double ny = s.y + 0.5 * h * vy;
            const double d = std::fabs(nx - mx) + std::fabs(ny - my);
            mx = nx;
            my = ny;
            if (d <= cfg.inner_tol) {
                converged = true;
                break;
            }
            if (!std::isfinite(d) || d > 1e6)
                throw Error(ErrorCode::IntegrationFailure,
                            "midpoint stage diverged at step " + std::to_string(n) +
                                "/" + std::to_string(nsteps) + ", |delta|=" + fmt17(d));
        }
        if (!converged)
            throw Error(ErrorCode::IntegrationFailure,
                        "midpoint stage did not converge at step " + std::to_string(n) +
                            "/" + std::to_string(nsteps) + " (t=" + fmt17(h * n) + ")");
        field_velocity(fm.field, mx, my, vx, vy);
        s.x += h * vx;
        s.y += h * vy;
        if (with_tangent) {
            const Jacobian2 B = field_dvel(fm.field, mx, my);
            const double a = 0.5 * h;
            // solve (I - aB) M' = (I + aB) M
            const Jacobian2 L{1.0 - a * B.m11, -a * B.m12, -a * B.m21, 1.0 - a * B.m22};
            const Jacobian2 R{1.0 + a * B.m11, a * B.m12, a * B.m21, 1.0 + a * B.m22};
            s.M = L.inverse() * (R * s.M);
        }
    }
}

// raw (unwrapped) image of one node applied to a representative point
struct RawOut {
    double x, y;
};

// Newton inversion of phix(z) = z + xi(z) on the lift, started at z = x.
double invert_phix(const TrigPoly& xi, double x) {
    double z = x;
    for (int it = 0; it < 64; ++it) {
        auto [v, dv] = xi.eval_d(z);
        const double r = z + v - x;
        const double dp = 1.0 + dv;
        if (dp <= 0.0)
            throw Error(ErrorCode::NotDiffeo, "curve frame x-component is not a diffeomorphism");
        const double step = r / dp;
        z -= step;
        if (std::fabs(step) <= 1e-15) return z;
    }
    throw Error(ErrorCode::NonConvergent, "curve frame inversion did not converge");
}

std::complex<double> invert_phix_complex(const TrigPoly& xi, std::complex<double> x) {
    std::complex<double> z = x;
    for (int it = 0; it < 80; ++it) {
        const std::complex<double> v = xi.eval_complex(z);
        const std::complex<double> dv = xi.derivative().eval_complex(z);
        const std::complex<double> r = z + v - x;
        const std::complex<double> dp = 1.0 + dv;
        if (std::abs(dp) < 1e-12)
            throw Error(ErrorCode::NotDiffeo, "complex frame inversion: derivative vanished");
        const std::complex<double> step = r / dp;
        z -= step;
        if (std::abs(step) <= 1e-14) return z;
    }
    throw Error(ErrorCode::NonConvergent, "complex curve frame inversion did not converge");
}

} // namespace

SymplecticMap::SymplecticMap() : node_(std::make_shared<node::Variant>(node::Composition{})) {}

SymplecticMap::SymplecticMap(node::Variant n)
    : node_(std::make_shared<node::Variant>(std::move(n))) {}

SymplecticMap SymplecticMap::translation(double theta) { return SymplecticMap(node::Translation{theta}); }
SymplecticMap SymplecticMap::vertical_shear(TrigPoly v) { return SymplecticMap(node::VerticalShear{std::move(v)}); }
SymplecticMap SymplecticMap::horizontal_shear(TrigPoly u) { return SymplecticMap(node::HorizontalShear{std::move(u)}); }
SymplecticMap SymplecticMap::horizontal_shear_fn(std::function<double(double)> u,
                                                 std::function<double(double)> du,
                                                 std::string label) {
    return SymplecticMap(node::HorizontalShearFn{std::move(u), std::move(du), std::move(label)});
}
SymplecticMap SymplecticMap::integrable_twist(double slope) { return SymplecticMap(node::IntegrableTwist{slope}); }
SymplecticMap SymplecticMap::curve_frame(TrigPoly xi, TrigPoly eta) {
    return SymplecticMap(node::CurveFrame{std::move(xi), std::move(eta), false});
}
SymplecticMap SymplecticMap::curve_frame_inverse(TrigPoly xi, TrigPoly eta) {
    return SymplecticMap(node::CurveFrame{std::move(xi), std::move(eta), true});
}
SymplecticMap SymplecticMap::flow_map(HamiltonianField field, double t, IntegratorConfig config) {
    return SymplecticMap(node::FlowMap{std::move(field), t, config});
}
SymplecticMap SymplecticMap::composition(std::vector<SymplecticMap> maps) {
    return SymplecticMap(node::Composition{std::move(maps)});
}
SymplecticMap SymplecticMap::identity() { return SymplecticMap(); }

SymplecticMap SymplecticMap::then(const SymplecticMap& after) const {
    return composition({*this, after});
}

LiftedPoint SymplecticMap::eval_lifted(const PhasePoint& p) const {
    IterateResult r = eval_full(p);
    return {r.p, r.winding};
}

PhasePoint SymplecticMap::eval(const PhasePoint& p) const { return eval_full(p).p; }

Jacobian2 SymplecticMap::jacobian(const PhasePoint& p) const { return eval_full(p).jacobian; }

IterateResult SymplecticMap::eval_full(const PhasePoint& p) const {
    const double x = p.x.value();
    const double y = p.y;
    RawOut out{x, y};
    Jacobian2 J;

    if (const auto* t = std::get_if<node::Translation>(node_.get())) {
        out.x = x + t->theta;
    } else if (const auto* vs = std::get_if<node::VerticalShear>(node_.get())) {
        auto [v, dv] = vs->v.eval_d(x);
        out.y = y + v;
        J = {1.0, 0.0, dv, 1.0};
    } else if (const auto* hs = std::get_if<node::HorizontalShear>(node_.get())) {
        auto [u, du] = hs->u.eval_d(y);
        out.x = x + u;
        J = {1.0, du, 0.0, 1.0};
    } else if (const auto* hf = std::get_if<node::HorizontalShearFn>(node_.get())) {
        out.x = x + hf->u(y);
        J = {1.0, hf->du(y), 0.0, 1.0};
    } else if (const auto* tw = std::get_if<node::IntegrableTwist>(node_.get())) {
        out.x = x + tw->slope * y;
        J = {1.0, tw->slope, 0.0, 1.0};
    } else if (const auto* cf = std::get_if<node::CurveFrame>(node_.get())) {
        if (!cf->inverse) {
            auto [xiv, xid] = cf->xi.eval_d(x);
            auto [etav, etad] = cf->eta.eval_d(x);
            const double dp = 1.0 + xid;
            if (dp <= 0.0)
                throw Error(ErrorCode::NotDiffeo, "curve frame x-component is not a diffeomorphism");
            const double ddp = cf->xi.eval_d2(x)[2]; // phix''
            out.x = x + xiv;
            out.y = y / dp + etav;
            J = {dp, 0.0, etad - y * ddp / (dp * dp), 1.0 / dp};
        } else {
            const double z1 = invert_phix(cf->xi, x);
            auto [xiv, xid] = cf->xi.eval_d(z1);
            (void)xiv;
            auto [etav, etad] = cf->eta.eval_d(z1);
            const double dp = 1.0 + xid;
            double offset = y - etav;
            if (p.space == Space::Torus) offset = circle_delta(y, wrap01(etav));
            const double z2 = offset * dp;
            const double ddp = cf->xi.eval_d2(z1)[2];
            // inverse Jacobian of the forward frame at (z1, z2)
            const Jacobian2 F{dp, 0.0, etad - z2 * ddp / (dp * dp), 1.0 / dp};
            out.x = z1;
            out.y = z2;
            J = F.inverse();
        }
    } else if (const auto* fm = std::get_if<node::FlowMap>(node_.get())) {
        FlowState s{x, y, Jacobian2::identity()};
        midpoint_integrate(*fm, s, true);
        out = {s.x, s.y};
        J = s.M;
    } else {
        const auto& comp = std::get<node::Composition>(*node_);
        IterateResult acc{p, Jacobian2::identity(), {}};
        for (const SymplecticMap& m : comp.maps) {
            IterateResult step = m.eval_full(acc.p);
            acc.p = step.p;
            acc.jacobian = step.jacobian * acc.jacobian;
            acc.winding += step.winding;
        }
        return acc;
    }

    IterateResult r;
    r.jacobian = J;
    const double wx = std::floor(out.x);
    r.winding.x = static_cast<long>(wx);
    double ny = out.y;
    if (p.space == Space::Torus) {
        const double wy = std::floor(out.y);
        r.winding.y = static_cast<long>(wy);
        ny = out.y - wy;
        if (ny >= 1.0) ny -= 1.0;
        if (ny < 0.0) ny += 1.0;
    }
    double nx = out.x - wx;
    if (nx >= 1.0) nx -= 1.0;
    if (nx < 0.0) nx += 1.0;
    r.p = PhasePoint(nx, ny, p.space);
    return r;
}

IterateResult SymplecticMap::iterate(const PhasePoint& p, long n) const {
    if (n < 1) throw Error(ErrorCode::DomainError, "iterate requires n >= 1");
    IterateResult acc{p, Jacobian2::identity(), {}};
    for (long i = 0; i < n; ++i) {
        IterateResult step = eval_full(acc.p);
        acc.p = step.p;
        acc.jacobian = step.jacobian * acc.jacobian;
        acc.winding += step.winding;
    }
    return acc;
}

bool SymplecticMap::complex_evaluable() const {
    if (std::holds_alternative<node::FlowMap>(*node_)) return false;
    if (std::holds_alternative<node::HorizontalShearFn>(*node_)) return false;
    if (const auto* comp = std::get_if<node::Composition>(node_.get())) {
        for (const SymplecticMap& m : comp->maps)
            if (!m.complex_evaluable()) return false;
    }
    return true;
}

ComplexPoint SymplecticMap::eval_complex(const ComplexPoint& z) const {
    using cd = std::complex<double>;
    const cd x = z.x;
    const cd y = z.y;
    ComplexPoint out = z;

    if (const auto* t = std::get_if<node::Translation>(node_.get())) {
        out.x = x + t->theta;
    } else if (const auto* vs = std::get_if<node::VerticalShear>(node_.get())) {
        out.y = y + vs->v.eval_complex(x);
    } else if (const auto* hs = std::get_if<node::HorizontalShear>(node_.get())) {
        out.x = x + hs->u.eval_complex(y);
    } else if (std::holds_alternative<node::HorizontalShearFn>(*node_)) {
        throw Error(ErrorCode::DomainError, "complex evaluation unsupported for callable shear");
    } else if (const auto* tw = std::get_if<node::IntegrableTwist>(node_.get())) {
        out.x = x + tw->slope * y;
    } else if (const auto* cf = std::get_if<node::CurveFrame>(node_.get())) {
        if (!cf->inverse) {
            const cd dp = 1.0 + cf->xi.derivative().eval_complex(x);
            out.x = x + cf->xi.eval_complex(x);
            out.y = y / dp + cf->eta.eval_complex(x);
        } else {
            const cd z1 = invert_phix_complex(cf->xi, x);
            const cd dp = 1.0 + cf->xi.derivative().eval_complex(z1);
            out.x = z1;
            out.y = (y - cf->eta.eval_complex(z1)) * dp;
        }
    } else if (std::holds_alternative<node::FlowMap>(*node_)) {
        throw Error(ErrorCode::DomainError, "complex evaluation unsupported for flow maps");
    } else {
        const auto& comp = std::get<node::Composition>(*node_);
        for (const SymplecticMap& m : comp.maps) out = m.eval_complex(out);
        return out;
    }
    out.x = cd(wrap01(out.x.real()), out.x.imag());
    return out;
}

bool SymplecticMap::jet_evaluable() const {
    if (std::holds_alternative<node::FlowMap>(*node_)) return false;
    if (std::holds_alternative<node::HorizontalShearFn>(*node_)) return false;
    if (const auto* comp = std::get_if<node::Composition>(node_.get())) {
        for (const SymplecticMap& m : comp->maps)
            if (!m.jet_evaluable()) return false;
    }
    return true;
}

Jet2 SymplecticMap::jet3(const PhasePoint& p) const {
    const double x = p.x.value();
    const double y = p.y;
    Jet2 j;
    j.image = eval(p);

    if (std::holds_alternative<node::Translation>(*node_)) {
        j.u = TruncSeries2::var_x();
        j.v = TruncSeries2::var_y();
    } else if (const auto* vs = std::get_if<node::VerticalShear>(node_.get())) {
        auto d = vs->v.eval_d3(x);
        d[0] = 0.0; // displacement series only
        j.u = TruncSeries2::var_x();
        j.v = TruncSeries2::var_y() + TruncSeries2::univariate(d, true);
    } else if (const auto* hs = std::get_if<node::HorizontalShear>(node_.get())) {
        auto d = hs->u.eval_d3(y);
        d[0] = 0.0;
        j.u = TruncSeries2::var_x() + TruncSeries2::univariate(d, false);
        j.v = TruncSeries2::var_y();
    } else if (const auto* tw = std::get_if<node::IntegrableTwist>(node_.get())) {
        j.u = TruncSeries2::var_x() + TruncSeries2::var_y().scaled(tw->slope);
        j.v = TruncSeries2::var_y();
    } else if (const auto* cf = std::get_if<node::CurveFrame>(node_.get())) {
        auto forward_jet = [&](double z1, double z2) {
            auto xid = cf->xi.eval_d3(z1);
            auto etad = cf->eta.eval_d3(z1);
            xid[0] = 0.0;
            etad[0] = 0.0;
            // phix'(z1 + dz) as a series in dz
            std::array<double, 4> dpd = {1.0 + cf->xi.eval_d3(z1)[1], cf->xi.eval_d3(z1)[2],
                                         cf->xi.eval_d3(z1)[3], 0.0};
            TruncSeries2 dp = TruncSeries2::univariate(dpd, true);
            TruncSeries2 rec = dp.reciprocal();
            TruncSeries2 z2s = TruncSeries2::constant(z2) + TruncSeries2::var_y();
            Jet2 f;
            f.u = TruncSeries2::var_x() + TruncSeries2::univariate(xid, true);
            TruncSeries2 yout = z2s * rec + TruncSeries2::univariate(etad, true);
            yout.c[0][0] = 0.0; // displacement series; constant cancels analytically
            f.v = yout;
            return f;
        };
        if (!cf->inverse) {
            Jet2 f = forward_jet(x, y);
            j.u = f.u;
            j.v = f.v;
        } else {
            // jet of the inverse = inverse of the forward jet at the preimage
            const double z1 = j.image.x.value();
            const double z2 = j.image.y;
            Jet2 f = forward_jet(z1, z2);
            Jet2 inv = f.inverse_at(j.image);
            j.u = inv.u;
            j.v = inv.v;
        }
    } else if (std::holds_alternative<node::FlowMap>(*node_) ||
               std::holds_alternative<node::HorizontalShearFn>(*node_)) {
        throw Error(ErrorCode::JetUnsupported, "jet evaluation unsupported for this node");
    } else {
        const auto& comp = std::get<node::Composition>(*node_);
        Jet2 acc = Jet2::identity_at(p);
        for (const SymplecticMap& m : comp.maps) {
            Jet2 step = m.jet3(acc.image);
            acc = Jet2::chain(acc, step);
        }
        return acc;
    }
    return j;
}

} // namespace kamforge
