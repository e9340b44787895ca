#include "kamforge/kam.hpp"

#include "kamforge/common.hpp"
#include "kamforge/errors.hpp"

#include <algorithm>
#include <cmath>

namespace kamforge {

namespace {

TrigPoly truncate(const TrigPoly& p, int max_degree) {
    std::vector<Harmonic> hs;
    for (const Harmonic& h : p.harmonics())
        if (h.k <= max_degree) hs.push_back(h);
    return TrigPoly(p.mean(), std::move(hs));
}

TrigPoly fit_trig(const std::vector<double>& values, int max_degree) {
    return truncate(TrigPoly::interpolate(values), max_degree);
}

double invert_graph_x(const TrigPoly& xi, double x) {
    double z = x;
    for (int it = 0; it < 64; ++it) {
        auto [v, dv] = xi.eval_d(z);
        const double dp = 1.0 + dv;
        if (dp <= 0.0) throw Error(ErrorCode::NotDiffeo, "curve is not a graph");
        const double step = (z + v - x) / dp;
        z -= step;
        if (std::fabs(step) <= 1e-15) break;
    }
    return z;
}

struct Frame2 {
    // columns u, v with det = 1
    double u1, u2, v1, v2;
    void apply(double a, double b, double& ox, double& oy) const {
        ox = u1 * a + v1 * b;
        oy = u2 * a + v2 * b;
    }
    void apply_inverse(double a, double b, double& ox, double& oy) const {
        ox = v2 * a - v1 * b;
        oy = -u2 * a + u1 * b;
    }
};

Frame2 make_frame(double du, double dv) {
    // u = (1 + xi', eta'), v = J u / |u|^2
    const double n = du * du + dv * dv;
    return Frame2{du, dv, -dv / n, du / n};
}

} // namespace

// ---------------------------------------------------------------------------
// KamCurve
// ---------------------------------------------------------------------------

KamCurve::KamCurve(TrigPoly xi, TrigPoly eta, double theta, Space space)
    : xi_(std::move(xi)), eta_(std::move(eta)), theta_(theta), space_(space) {
    if (xi_.mean() != 0.0) {
        // the parameter phase carries the mean of xi; keep xi mean-free
        xi_ = xi_ - TrigPoly(xi_.mean());
    }
}

KamCurve KamCurve::flat(double y, double theta, Space space) {
    return KamCurve(TrigPoly(0.0), TrigPoly(y), theta, space);
}

double KamCurve::min_graph_slope() const {
    if (xi_.is_constant()) return 1.0;
    const TrigPoly d = xi_.derivative();
    const int n = std::max(256, 8 * xi_.degree());
    double m = 1e300;
    for (int i = 0; i < n; ++i) m = std::min(m, 1.0 + d.eval(static_cast<double>(i) / n));
    return m;
}

bool KamCurve::graph_form() const { return min_graph_slope() > 0.0; }

PhasePoint KamCurve::at(double z) const {
    return PhasePoint(z + xi_.eval(z), eta_.eval(z), space_);
}

TrigPoly KamCurve::graph_function(int grid) const {
    if (xi_.is_constant()) return eta_;
    if (!graph_form()) throw Error(ErrorCode::NotDiffeo, "curve is not a graph over x");
    if (grid <= 0) grid = std::max(256, 8 * std::max(xi_.degree(), eta_.degree()));
    std::vector<double> g(grid);
    for (int i = 0; i < grid; ++i) {
        const double x = static_cast<double>(i) / grid;
        g[i] = eta_.eval(invert_graph_x(xi_, x));
    }
    return TrigPoly::interpolate(g);
}

SymplecticMap KamCurve::frame() const { return SymplecticMap::curve_frame(xi_, eta_); }
SymplecticMap KamCurve::frame_inverse() const {
    return SymplecticMap::curve_frame_inverse(xi_, eta_);
}

SymplecticMap KamCurve::conjugate(const SymplecticMap& f) const {
    return SymplecticMap::composition({frame(), f, frame_inverse()});
}

double KamCurve::residual_against(const SymplecticMap& f, int grid) const {
    double sup = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double z = static_cast<double>(i) / grid;
        const PhasePoint img = f.eval(at(z));
        const PhasePoint tgt = at(wrap01(z + theta_));
        sup = std::max(sup, PhasePoint::distance(img, tgt));
    }
    return sup;
}

KamCurve KamCurve::shifted_parameter(double sigma) const {
    // phi(z + sigma) reparameterization: xi'(z) = xi(z + sigma) + sigma (mod mean),
    // eta'(z) = eta(z + sigma); realized by sampling and refitting
    const int n = std::max<std::size_t>(128, 8 * std::max(xi_.degree(), eta_.degree()));
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
        const double z = static_cast<double>(i) / n;
        xs[i] = xi_.eval(z + sigma) + sigma;
        ys[i] = eta_.eval(z + sigma);
    }
    KamCurve out(TrigPoly::interpolate(xs), TrigPoly::interpolate(ys), theta_, space_);
    out.residual = residual;
    out.twist_min = twist_min;
    out.strip_radius = strip_radius;
    out.strip_residual = strip_residual;
    out.map_ref = map_ref;
    return out;
}

// ---------------------------------------------------------------------------
// rotation number
// ---------------------------------------------------------------------------

RotationEstimate rotation_number(const SymplecticMap& map, const PhasePoint& start,
                                 long n_iter, double oscillation_bound) {
    if (n_iter < 8) throw Error(ErrorCode::DomainError, "rotation_number needs n_iter >= 8");
    std::vector<double> inc(n_iter);
    PhasePoint p = start;
    for (long k = 0; k < n_iter; ++k) {
        IterateResult r = map.eval_full(p);
        inc[k] = r.p.x.value() - p.x.value() + static_cast<double>(r.winding.x);
        p = r.p;
    }
    auto weighted = [&](long a, long b) {
        double sw = 0.0, sv = 0.0;
        const double len = static_cast<double>(b - a);
        for (long k = a; k < b; ++k) {
            const double s = (static_cast<double>(k - a) + 1.0) / (len + 1.0);
            const double w = std::exp(-1.0 / (s * (1.0 - s)));
            sw += w;
            sv += w * inc[k];
        }
        return sv / sw;
    };
    RotationEstimate est;
    est.value = weighted(0, n_iter);
    const double a = weighted(0, n_iter / 2);
    const double b = weighted(n_iter / 2, n_iter);
    est.error_bound = std::max(std::fabs(est.value - a), std::fabs(est.value - b));
    if (est.error_bound > oscillation_bound)
        throw Error(ErrorCode::NonConvergent,
                    "rotation estimate oscillation " + fmt17(est.error_bound) +
                        " exceeds bound " + fmt17(oscillation_bound));
    return est;
}

// ---------------------------------------------------------------------------
// invariance solver
// ---------------------------------------------------------------------------

namespace {

struct CurveGridData {
    std::vector<double> ex, ey; // error components
    double res = 0.0;
};

CurveGridData curve_error(const SymplecticMap& map, const KamCurve& c, int n) {
    CurveGridData d;
    d.ex.resize(n);
    d.ey.resize(n);
    for (int j = 0; j < n; ++j) {
        const double z = static_cast<double>(j) / n;
        const PhasePoint img = map.eval(c.at(z));
        const double zx = wrap01(z + c.theta());
        const double tx = zx + c.xi().eval(zx);
        const double ty = c.eta().eval(zx);
        d.ex[j] = circle_delta(img.x.value(), wrap01(tx));
        d.ey[j] = c.space() == Space::Torus ? circle_delta(img.y, wrap01(ty)) : img.y - ty;
        d.res = std::max(d.res, std::max(std::fabs(d.ex[j]), std::fabs(d.ey[j])));
    }
    return d;
}

double tail_energy_fraction(const TrigPoly& p, int modes) {
    double total = 0.0, tail = 0.0;
    const int cut = modes - std::max(1, modes / 10);
    for (const Harmonic& h : p.harmonics()) {
        const double e = h.c * h.c + h.s * h.s;
        total += e;
        if (h.k > cut) tail += e;
    }
    return total > 0.0 ? tail / total : 0.0;
}

double estimate_strip_radius(const TrigPoly& xi, const TrigPoly& eta) {
    double amp0 = 1e-12;
    auto scan = [&](const TrigPoly& p) {
        for (const Harmonic& h : p.harmonics()) amp0 = std::max(amp0, std::hypot(h.c, h.s));
    };
    scan(xi);
    scan(eta);
    double r = 0.5;
    auto bound = [&](const TrigPoly& p) {
        for (const Harmonic& h : p.harmonics()) {
            const double a = std::hypot(h.c, h.s);
            if (a <= 1e-15) continue;
            // radius at which this harmonic grows back to the leading scale
            const double rk = std::log(amp0 / a + 1.0) / (two_pi * h.k);
            r = std::min(r, rk);
        }
    };
    bound(xi);
    bound(eta);
    return std::max(0.0, 0.8 * r);
}

} // namespace

KamCurve solve_invariance(const SymplecticMap& map, const DiophantineCert& cert,
                          const KamCurve& guess, int fourier_modes, int max_iters,
                          const InvarianceOptions& options) {
    if (fourier_modes < 1)
        throw Error(ErrorCode::DomainError, "solve_invariance requires fourier_modes >= 1");
    const double theta = cert.theta;
    int grid = 128;
    while (grid < 4 * fourier_modes) grid *= 2;
    if (grid > (1 << 15)) grid = 1 << 15;

    KamCurve cur(guess.xi(), guess.eta(), theta, options.space);
    std::vector<double> history;

    CurveGridData err = curve_error(map, cur, grid);
    history.push_back(err.res);
    double best = err.res;
    int stalls = 0;
    const bool exact_at_guess = err.res <= options.tol;

    for (int iter = 0; iter < max_iters && err.res > options.tol; ++iter) {
        // tangent frames at z_j and z_j + theta
        const TrigPoly dxi = cur.xi().derivative();
        const TrigPoly deta = cur.eta().derivative();
        std::vector<double> S(grid), rhs1(grid), rhs2(grid);
        std::vector<Frame2> P(grid), Pth(grid);
        for (int j = 0; j < grid; ++j) {
            const double z = static_cast<double>(j) / grid;
            const double zt = z + theta;
            P[j] = make_frame(1.0 + dxi.eval(z), deta.eval(z));
            Pth[j] = make_frame(1.0 + dxi.eval(zt), deta.eval(zt));
            const Jacobian2 DF = map.jacobian(cur.at(z));
            // A = P(z+theta)^{-1} DF P(z); S = A12
            double c1x, c1y, c2x, c2y;
            P[j].apply(1.0, 0.0, c1x, c1y); // u column
            P[j].apply(0.0, 1.0, c2x, c2y); // v column
            double a1x = DF.m11 * c1x + DF.m12 * c1y, a1y = DF.m21 * c1x + DF.m22 * c1y;
            double a2x = DF.m11 * c2x + DF.m12 * c2y, a2y = DF.m21 * c2x + DF.m22 * c2y;
            double A11, A21, A12, A22;
            Pth[j].apply_inverse(a1x, a1y, A11, A21);
            Pth[j].apply_inverse(a2x, a2y, A12, A22);
            (void)A11;
            (void)A21;
            (void)A22;
            S[j] = A12;
            // A w(z) - w(z+theta) = -P(z+theta)^{-1} E gives
            //   w2(z+theta) - w2(z) = e2,  w1(z+theta) - w1(z) = S w2 + e1
            // with (e1, e2) = P(z+theta)^{-1} E.
            double e1, e2;
            Pth[j].apply_inverse(err.ex[j], err.ey[j], e1, e2);
            rhs1[j] = e1;
            rhs2[j] = e2;
        }
        double meanS = 0.0, mean2 = 0.0;
        for (int j = 0; j < grid; ++j) {
            meanS += S[j];
            mean2 += rhs2[j];
        }
        meanS /= grid;
        mean2 /= grid;
        if (std::fabs(meanS) < 1e-12)
            throw NewtonDiverged("degenerate mean torsion along the curve", history);

        TrigPoly rhs2_poly = fit_trig(rhs2, fourier_modes);
        CohomologySolution w2t;
        try {
            w2t = solve_cohomological(rhs2_poly, theta, options.divisor_floor, 0);
        } catch (const SmallDivisorResonance&) {
            throw;
        }
        // constant part of w2 fixes the solvability of the first component
        double meanSw = 0.0, mean1 = 0.0;
        std::vector<double> w2g(grid);
        for (int j = 0; j < grid; ++j) {
            w2g[j] = w2t.beta.eval(static_cast<double>(j) / grid);
            meanSw += S[j] * w2g[j];
            mean1 += rhs1[j];
        }
        meanSw /= grid;
        mean1 /= grid;
        const double b = -(mean1 + meanSw) / meanS;
        std::vector<double> r1(grid);
        for (int j = 0; j < grid; ++j) {
            w2g[j] += b;
            r1[j] = rhs1[j] + S[j] * w2g[j];
        }
        TrigPoly r1_poly = fit_trig(r1, fourier_modes);
        CohomologySolution w1 = solve_cohomological(r1_poly, theta, options.divisor_floor, 0);

        std::vector<double> dx(grid), dy(grid);
        for (int j = 0; j < grid; ++j) {
            const double z = static_cast<double>(j) / grid;
            P[j].apply(w1.beta.eval(z), w2g[j], dx[j], dy[j]);
        }
        TrigPoly dx_poly = fit_trig(dx, fourier_modes);
        TrigPoly dy_poly = fit_trig(dy, fourier_modes);

        double lambda = 1.0;
        bool improved = false;
        for (int attempt = 0; attempt < 4; ++attempt) {
            KamCurve cand(truncate(cur.xi() + dx_poly.scaled(lambda), fourier_modes),
                          truncate(cur.eta() + dy_poly.scaled(lambda), fourier_modes),
                          theta, options.space);
            CurveGridData cerr = curve_error(map, cand, grid);
            if (cerr.res < err.res) {
                cur = cand;
                err = cerr;
                improved = true;
                break;
            }
            lambda *= 0.5;
        }
        history.push_back(err.res);
        if (!improved) {
            if (++stalls >= 2)
                throw NewtonDiverged("invariance residual stalled at " + fmt17(err.res),
                                     history);
        } else {
            stalls = 0;
        }
        if (err.res < best) best = err.res;
        if (!std::isfinite(err.res) || err.res > 1e3 * std::max(best, 1.0))
            throw NewtonDiverged("invariance residual blew up: " + fmt17(err.res), history);
    }

    if (err.res > options.tol)
        throw NewtonDiverged("no convergence after max iterations (residual " +
                                 fmt17(err.res) + ")",
                             history);

    // phase normalization: pin mean(xi) = 0 through a parameter shift
    {
        double m = cur.xi().mean();
        if (m != 0.0) cur = cur.shifted_parameter(-m);
    }

    // tail-energy rejection on the fixed-mode discretization
    const double tail =
        std::max(tail_energy_fraction(cur.xi(), fourier_modes),
                 tail_energy_fraction(cur.eta(), fourier_modes));
    if (tail > options.tail_energy)
        throw NewtonDiverged("top-decile tail energy " + fmt17(tail) +
                                 " exceeds cap; raise fourier_modes",
                             history);

    // validated residual on the finer grid
    cur.residual = cur.residual_against(map, options.residual_grid_factor * grid);
    if (cur.residual > 10.0 * std::max(err.res, options.tol))
        throw NewtonDiverged("fine-grid residual " + fmt17(cur.residual) +
                                 " inconsistent with solve-grid residual " + fmt17(err.res),
                             history);

    // twist positivity along the curve, measured in the straightened frame;
    // a guess that already satisfies the invariance (zero iterations) is
    // returned as-is, twist recorded but not enforced
    if (!cur.graph_form()) throw Error(ErrorCode::TwistLost, "curve left graph form");
    {
        const SymplecticMap conj = cur.conjugate(map);
        double tmin = 1e300;
        for (int i = 0; i < 256; ++i) {
            const double x = i / 256.0;
            tmin = std::min(tmin, conj.jacobian(PhasePoint(x, 0.0, options.space)).m12);
        }
        cur.twist_min = tmin;
        if (!exact_at_guess && !(tmin > options.twist_check_tol))
            throw Error(ErrorCode::TwistLost,
                        "twist entry dropped to " + fmt17(tmin) + " along the curve");
    }

    // strip radius from coefficient decay, shrunk until the complex residual
    // is consistent (closed-form maps only)
    cur.strip_radius = estimate_strip_radius(cur.xi(), cur.eta());
    cur.strip_residual = 0.0;
    if (options.validate_strip && map.complex_evaluable() && cur.strip_radius > 1e-3) {
        double r = cur.strip_radius;
        for (int attempt = 0; attempt < 6; ++attempt) {
            double sup = 0.0;
            for (int i = 0; i < 64; ++i) {
                for (double im : {-r, r}) {
                    const std::complex<double> z(i / 64.0, im);
                    const std::complex<double> px = z + cur.xi().eval_complex(z);
                    const std::complex<double> py = cur.eta().eval_complex(z);
                    const ComplexPoint img = map.eval_complex({px, py});
                    const std::complex<double> zt = z + theta;
                    std::complex<double> dxc =
                        img.x - (zt + cur.xi().eval_complex(zt));
                    dxc = std::complex<double>(dxc.real() - std::round(dxc.real()), dxc.imag());
                    const std::complex<double> dyc = img.y - cur.eta().eval_complex(zt);
                    sup = std::max(sup, std::max(std::abs(dxc), std::abs(dyc)));
                }
            }
            if (sup <= std::max(1e-6, 100.0 * cur.residual)) {
                cur.strip_residual = sup;
                cur.strip_radius = r;
                break;
            }
            r *= 0.5;
            if (attempt == 5) {
                cur.strip_radius = 0.0;
                cur.strip_residual = sup;
            }
        }
    }

    cur.map_ref = std::make_shared<const SymplecticMap>(map);
    return cur;
}

// ---------------------------------------------------------------------------
// adapted coordinates and KAM smallness
// ---------------------------------------------------------------------------

AdaptedChart adapted_coordinates(const SymplecticMap& map, const KamCurve& curve,
                                 double divisor_floor) {
    const double res = curve.residual_against(map, 512);
    if (res > 1e-8)
        throw Error(ErrorCode::InvarianceViolation,
                    "curve residual " + fmt17(res) + " exceeds 1e-8");
    const SymplecticMap conj = curve.conjugate(map);
    const int n = 512;
    std::vector<double> alpha(n);
    for (int i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) / n;
        alpha[i] = conj.jacobian(PhasePoint(x, 0.0, curve.space())).m12;
        if (!(alpha[i] > 0.0))
            throw Error(ErrorCode::NoTwist, "twist not positive at x=" + fmt17(x));
    }
    AdaptedChart chart;
    chart.alpha = TrigPoly::interpolate(alpha);
    CohomologySolution sol = solve_cohomological(chart.alpha, curve.theta(), divisor_floor, 0);
    chart.beta = sol.beta;
    chart.alpha_star = sol.alpha_bar;
    chart.r = curve.strip_radius;
    chart.delta = 0.05;

    // on-circle conjugated derivative must be the constant unipotent
    const double theta = curve.theta();
    double defect = 0.0;
    for (int i = 0; i < 256; ++i) {
        const double x = i / 256.0;
        const Jacobian2 DF = conj.jacobian(PhasePoint(x, 0.0, curve.space()));
        const double b0 = chart.beta.eval(x);
        const double b1 = chart.beta.eval(x + theta);
        // [[1,-b1],[0,1]] * DF * [[1,b0],[0,1]]
        const Jacobian2 left{1.0, -b1, 0.0, 1.0};
        const Jacobian2 right{1.0, b0, 0.0, 1.0};
        const Jacobian2 M = left * (DF * right);
        defect = std::max({defect, std::fabs(M.m11 - 1.0), std::fabs(M.m12 - chart.alpha_star),
                           std::fabs(M.m21), std::fabs(M.m22 - 1.0)});
    }
    chart.unipotent_defect = defect;
    if (defect > 1e-8)
        throw Error(ErrorCode::NonConvergent,
                    "adapted-frame unipotent defect " + fmt17(defect) + " exceeds 1e-8");
    if (!(chart.alpha_star > 0.0))
        throw Error(ErrorCode::NoTwist, "averaged twist alpha* is not positive");
    return chart;
}

namespace {

std::complex<double> invert_psi2(const TrigPoly& beta, std::complex<double> w1,
                                 std::complex<double> z2) {
    std::complex<double> z1 = w1 - beta.eval_complex(w1) * z2;
    for (int it = 0; it < 60; ++it) {
        const std::complex<double> f = z1 + beta.eval_complex(z1) * z2 - w1;
        const std::complex<double> df = 1.0 + beta.derivative().eval_complex(z1) * z2;
        if (std::abs(df) < 1e-12)
            throw Error(ErrorCode::NonConvergent, "psi2 inversion derivative vanished");
        z1 -= f / df;
        if (std::abs(f) < 1e-14) break;
    }
    return z1;
}

} // namespace

SmallnessReport kam_smallness(const SymplecticMap& map, const KamCurve& curve,
                              const AdaptedChart& chart, double r, double delta,
                              int grid_x, int grid_arg) {
    SmallnessReport rep;
    rep.threshold = std::pow(delta, 1.5);
    rep.complex_used = map.complex_evaluable();
    const double theta = curve.theta();

    const SymplecticMap conj = curve.conjugate(map);
    auto deviation_real = [&](double z1, double z2) {
        // psi2, then the conjugated map, then psi2^{-1}
        const double x = z1 + chart.beta.eval(z1) * z2;
        const PhasePoint img = conj.eval(PhasePoint(x, z2, curve.space()));
        const double w2 = img.y;
        const double w1 =
            invert_psi2(chart.beta, std::complex<double>(img.x.value(), 0.0), w2).real();
        const double dx = circle_delta(w1, wrap01(z1 + theta + chart.alpha_star * z2));
        const double dy = w2 - z2;
        return std::max(std::fabs(dx), std::fabs(dy));
    };

    for (int i = 0; i < grid_x; ++i) {
        const double z1 = static_cast<double>(i) / grid_x;
        for (int j = 0; j <= grid_arg; ++j) {
            const double z2 = -delta + 2.0 * delta * j / grid_arg;
            rep.sup_norm = std::max(rep.sup_norm, deviation_real(z1, z2));
        }
    }

    if (rep.complex_used && r > 0.0) {
        using cd = std::complex<double>;
        for (int i = 0; i < grid_x; ++i) {
            for (double im : {-r, 0.0, r}) {
                const cd z1(static_cast<double>(i) / grid_x, im);
                for (int a = 0; a < grid_arg; ++a) {
                    const double ph = two_pi * a / grid_arg;
                    const cd z2 = delta * cd(std::cos(ph), std::sin(ph));
                    const cd x = z1 + chart.beta.eval_complex(z1) * z2;
                    // conjugated map, complex path
                    ComplexPoint img;
                    try {
                        const SymplecticMap frame = curve.frame();
                        const SymplecticMap frame_inv = curve.frame_inverse();
                        ComplexPoint w = frame.eval_complex({x, z2});
                        w = map.eval_complex(w);
                        img = frame_inv.eval_complex(w);
                    } catch (const Error&) {
                        continue; // off-strip excursions are reported via sup = inf
                    }
                    const cd w1 = invert_psi2(chart.beta, img.x, img.y);
                    cd dx = w1 - (z1 + theta + chart.alpha_star * z2);
                    dx = cd(dx.real() - std::round(dx.real()), dx.imag());
                    const cd dy = img.y - z2;
                    rep.sup_norm = std::max(rep.sup_norm, std::max(std::abs(dx), std::abs(dy)));
                }
            }
        }
    }
    rep.pass = rep.sup_norm < rep.threshold;
    return rep;
}

// ---------------------------------------------------------------------------
// intersection check
// ---------------------------------------------------------------------------

bool intersection_check(const SymplecticMap& map, const TrigPoly& g, int samples,
                        Space space) {
    if (samples < 4) throw Error(ErrorCode::DomainError, "need at least 4 samples");
    std::vector<double> disp(samples);
    std::vector<double> imgx(samples);
    for (int i = 0; i < samples; ++i) {
        const double x = static_cast<double>(i) / samples;
        const PhasePoint img = map.eval(PhasePoint(x, g.eval(x), space));
        imgx[i] = img.x.value();
        const double gy = g.eval(img.x.value());
        disp[i] = space == Space::Torus ? circle_delta(img.y, wrap01(gy)) : img.y - gy;
    }
    // the image curve must remain a graph over x at sample resolution:
    // consecutive image x's must advance positively and wind exactly once
    double total = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double step = circle_delta(imgx[(i + 1) % samples], imgx[i]);
        if (step <= 0.0)
            throw Error(ErrorCode::GraphFolded,
                        "image of the graph folds over x near x=" +
                            fmt17(static_cast<double>(i) / samples));
        total += step;
    }
    (void)total;
    double lo = 1e300, hi = -1e300;
    for (double d : disp) {
        lo = std::min(lo, d);
        hi = std::max(hi, d);
        if (std::fabs(d) <= 1e-12) return true;
    }
    return lo <= 0.0 && hi >= 0.0;
}

} // namespace kamforge
