#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kamforge/analysis.hpp"
#include "kamforge/errors.hpp"
#include "kamforge/map.hpp"

#include "test_helpers.hpp"

#include <cmath>
#include <random>

using namespace kamforge;
using namespace kamforge::testing;

TEST_CASE("circle point arithmetic") {
    CirclePoint a(1.3);
    CHECK(a.value() == doctest::Approx(0.3));
    CirclePoint b(-0.1);
    CHECK(b.value() == doctest::Approx(0.9));
    CHECK(CirclePoint::distance(a, b) == doctest::Approx(0.4));
    CHECK(CirclePoint::distance(CirclePoint(0.05), CirclePoint(0.95)) == doctest::Approx(0.1));
    // distance stays in [0, 1/2]
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> xs(-10.0, 10.0);
    for (int i = 0; i < 1000; ++i) {
        double d = CirclePoint::distance(CirclePoint(xs(rng)), CirclePoint(xs(rng)));
        CHECK(d >= 0.0);
        CHECK(d <= 0.5);
    }
}

TEST_CASE("eval examples") {
    // shear then zero translation: (0.25, 0.1) -> (0.35, 0.1)
    auto m = SymplecticMap::composition(
        {SymplecticMap::integrable_twist(1.0), SymplecticMap::translation(0.0)});
    PhasePoint q = m.eval(PhasePoint(0.25, 0.1, Space::Cylinder));
    CHECK(q.x.value() == doctest::Approx(0.35).epsilon(1e-15));
    CHECK(q.y == doctest::Approx(0.1));

    // fbar at (0, 1/4): sin(pi/2) = 1 wraps to x = 0
    PhasePoint r = fbar().eval(PhasePoint(0.0, 0.25, Space::Cylinder));
    CHECK(r.x.value() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r.y == doctest::Approx(0.25));

    // empty composition is the identity
    PhasePoint s = SymplecticMap::identity().eval(PhasePoint(0.77, -1.3, Space::Cylinder));
    CHECK(s.x.value() == doctest::Approx(0.77));
    CHECK(s.y == doctest::Approx(-1.3));
}

TEST_CASE("jacobian examples and finite differences") {
    auto tw = SymplecticMap::integrable_twist(1.0);
    Jacobian2 J = tw.jacobian(PhasePoint(0.4, -2.0, Space::Cylinder));
    CHECK(J.m11 == 1.0);
    CHECK(J.m12 == 1.0);
    CHECK(J.m21 == 0.0);
    CHECK(J.m22 == 1.0);

    // fbar at y = 1/4: 2 pi cos(pi/2) = 0
    Jacobian2 Jf = fbar().jacobian(PhasePoint(0.3, 0.25, Space::Cylinder));
    CHECK(Jf.m12 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(Jf.m11 == 1.0);

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> xs(0.0, 1.0), ys(-0.5, 0.5);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        SymplecticMap m = random_closed_form_map(rng);
        for (int i = 0; i < 17; ++i) {
            const double x = xs(rng), y = ys(rng);
            const Jacobian2 J0 = m.jacobian(PhasePoint(x, y, Space::Cylinder));
            const double h = 1e-6;
            auto disp = [&](double ax, double ay) {
                auto r = m.eval_full(PhasePoint(ax, ay, Space::Cylinder));
                return std::pair<double, double>(r.p.x.value() + r.winding.x, r.p.y);
            };
            auto [xp, yp] = disp(x + h, y);
            auto [xm, ym] = disp(x - h, y);
            auto [xu, yu] = disp(x, y + h);
            auto [xd, yd] = disp(x, y - h);
            // lift differences may jump by the winding convention; reduce mod 1
            const double fd11 = circle_delta(xp, xm) / (2 * h);
            const double fd21 = (yp - ym) / (2 * h);
            const double fd12 = circle_delta(xu, xd) / (2 * h);
            const double fd22 = (yu - yd) / (2 * h);
            CHECK(std::fabs(J0.m11 - fd11) < 1e-6);
            CHECK(std::fabs(J0.m12 - fd12) < 1e-6);
            CHECK(std::fabs(J0.m21 - fd21) < 1e-6);
            CHECK(std::fabs(J0.m22 - fd22) < 1e-6);
            ++checked;
        }
    }
    CHECK(checked >= 1000);
}

TEST_CASE("unit determinant for closed-form maps at random points") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> xs(0.0, 1.0), ys(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        SymplecticMap m = random_closed_form_map(rng, 5);
        for (int i = 0; i < 100; ++i) {
            Jacobian2 J = m.jacobian(PhasePoint(xs(rng), ys(rng), Space::Cylinder));
            worst = std::max(worst, std::fabs(J.det() - 1.0));
        }
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("iterate examples") {
    auto m = twist_with_rotation(1.0 / 3.0);
    IterateResult r = m.iterate(PhasePoint(0.0, 0.0, Space::Cylinder), 3);
    CHECK(r.p.x.value() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r.p.y == doctest::Approx(0.0));
    CHECK(r.jacobian.m11 == 1.0);
    CHECK(r.jacobian.m12 == 3.0);
    CHECK(r.jacobian.m21 == 0.0);
    CHECK(r.winding.x == 1);

    // n = 1 agrees with eval + jacobian
    std::mt19937_64 rng(31);
    SymplecticMap g = random_closed_form_map(rng);
    PhasePoint p(0.3, 0.2, Space::Cylinder);
    IterateResult one = g.iterate(p, 1);
    CHECK(PhasePoint::distance(one.p, g.eval(p)) == 0.0);
    Jacobian2 J = g.jacobian(p);
    CHECK(one.jacobian.m12 == J.m12);

    // Translation(0.25)^4 = identity with winding 1
    IterateResult t = SymplecticMap::translation(0.25).iterate(PhasePoint(0.6, 0.0, Space::Cylinder), 4);
    CHECK(t.p.x.value() == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(t.winding.x == 1);
}

TEST_CASE("iterate semigroup property") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> xs(0.0, 1.0), ys(-0.3, 0.3);
    for (int trial = 0; trial < 25; ++trial) {
        SymplecticMap m = random_closed_form_map(rng);
        PhasePoint p(xs(rng), ys(rng), Space::Cylinder);
        const long a = 3, b = 4;
        IterateResult full = m.iterate(p, a + b);
        IterateResult part = m.iterate(m.iterate(p, a).p, b);
        CHECK(PhasePoint::distance(full.p, part.p) < 1e-10);
    }
}

TEST_CASE("torus wrapping of y") {
    auto vs = SymplecticMap::vertical_shear(TrigPoly(0.0, {Harmonic{1, 0.0, 2.3}}));
    PhasePoint q = vs.eval(PhasePoint(0.25, 0.9, Space::Torus));
    CHECK(q.y >= 0.0);
    CHECK(q.y < 1.0);
    LiftedPoint l = vs.eval_lifted(PhasePoint(0.25, 0.9, Space::Torus));
    CHECK(l.winding.y == 3); // 0.9 + 2.3 = 3.2
}

TEST_CASE("curve frame straightens its curve and inverts exactly") {
    std::mt19937_64 rng(43);
    TrigPoly xi = random_trig(rng, 5, 0.03);
    xi = xi - TrigPoly(xi.mean());
    TrigPoly eta = random_trig(rng, 5, 0.2);
    auto fwd = SymplecticMap::curve_frame(xi, eta);
    auto inv = SymplecticMap::curve_frame_inverse(xi, eta);
    auto round = SymplecticMap::composition({fwd, inv});
    std::uniform_real_distribution<double> xs(0.0, 1.0), ys(-0.4, 0.4);
    for (int i = 0; i < 200; ++i) {
        PhasePoint p(xs(rng), ys(rng), Space::Cylinder);
        PhasePoint q = round.eval(p);
        CHECK(PhasePoint::distance(p, q) < 1e-12);
        // frame maps (z, 0) onto the curve
        PhasePoint on = fwd.eval(PhasePoint(p.x.value(), 0.0, Space::Cylinder));
        const double phix = p.x.value() + xi.eval(p.x.value());
        CHECK(on.x.value() == doctest::Approx(wrap01(phix)).epsilon(1e-14));
        CHECK(on.y == doctest::Approx(eta.eval(p.x.value())).epsilon(1e-14));
    }
}

TEST_CASE("twist entry of the integrable twist is n") {
    auto m = twist_with_rotation(0.6180339887498949);
    TrigPoly zero(0.0);
    for (long n : {1L, 2L, 5L, 12L, 20L}) {
        double w = twist_entry(m, zero, 0.37, n);
        CHECK(w == doctest::Approx(static_cast<double>(n)).epsilon(1e-13));
    }
    // n = 1 equals the Jacobian entry
    CHECK(twist_entry(m, zero, 0.1, 1) == m.jacobian(PhasePoint(0.1, 0.0, Space::Cylinder)).m12);
}

TEST_CASE("twist entry rejects non-invariant graphs") {
    auto m = SymplecticMap::vertical_shear(TrigPoly::sine(1, 0.2));
    CHECK_THROWS_AS((void)twist_entry(m, TrigPoly(0.0), 0.3, 2), Error);
}

TEST_CASE("cone check passes for the twist and fails for the identity") {
    auto m = twist_with_rotation(0.328);
    ConeReport ok = cone_check(m, TrigPoly(0.0), 20, 64);
    CHECK(ok.passed);

    ConeReport bad = cone_check(SymplecticMap::identity(), TrigPoly(0.0), 1, 8);
    CHECK(!bad.passed);
    REQUIRE(bad.first_violation.has_value());
    CHECK(bad.first_violation->step == 1);
}

TEST_CASE("cone check follows from positive one-step twist on sampled graphs") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 12; ++trial) {
        // conjugate a twist by a frame: invariant graph with positive twist
        TrigPoly xi = random_trig(rng, 3, 0.02);
        xi = xi - TrigPoly(xi.mean());
        TrigPoly eta = random_trig(rng, 3, 0.1);
        auto inner = twist_with_rotation(0.3183);
        auto m = SymplecticMap::composition({SymplecticMap::curve_frame_inverse(xi, eta),
                                             inner,
                                             SymplecticMap::curve_frame(xi, eta)});
        // graph of the conjugated curve: y = eta(phix^{-1}(x)); sample and fit
        const int ngrid = 128;
        std::vector<double> gy(ngrid);
        for (int i = 0; i < ngrid; ++i) {
            PhasePoint img = SymplecticMap::curve_frame(xi, eta)
                                 .eval(PhasePoint(static_cast<double>(i) / ngrid, 0.0, Space::Cylinder));
            gy[i] = img.y; // not uniform in x; fit below instead
        }
        // build g by inverting on a uniform x grid
        std::vector<double> guniform(ngrid);
        for (int i = 0; i < ngrid; ++i) {
            const double x = static_cast<double>(i) / ngrid;
            double z = x;
            for (int it = 0; it < 50; ++it) {
                auto [v, dv] = xi.eval_d(z);
                double step = (z + v - x) / (1.0 + dv);
                z -= step;
                if (std::fabs(step) < 1e-15) break;
            }
            guniform[i] = eta.eval(z);
        }
        TrigPoly g = TrigPoly::interpolate(guniform);
        bool positive = true;
        for (int i = 0; i < 32; ++i) {
            if (twist_entry(m, g, i / 32.0, 1, Space::Cylinder, 1e-6) <= 0.0) positive = false;
        }
        if (positive) {
            ConeReport rep = cone_check(m, g, 8, 32, Space::Cylinder, 1e-6);
            CHECK(rep.passed);
        }
    }
}

TEST_CASE("sup distance examples and properties") {
    auto m = fbar();
    Region band{0.0, 1.0, -0.5, 0.5};
    CHECK(sup_distance(m, m, band, 32, 8) == 0.0);

    // uniform translations differ by epsilon
    const double eps = 0.23;
    double d = sup_distance(SymplecticMap::translation(0.1),
                            SymplecticMap::translation(0.1 + eps), band, 16, 4);
    CHECK(d == doctest::Approx(eps).epsilon(1e-12));

    // post-composed shear displaces by at most t * sup|h'|
    TrigPoly h = TrigPoly::cosine(1, 0.5);
    const double t = 1e-3;
    auto sheared = SymplecticMap::composition(
        {m, SymplecticMap::vertical_shear(h.derivative().scaled(t))});
    double hsup = h.derivative().sup_norm();
    double ds = sup_distance(m, sheared, band, 32, 8);
    CHECK(ds <= hsup * t + 1e-12);

    // monotone under nested grid refinement
    std::mt19937_64 rng(61);
    SymplecticMap a = random_closed_form_map(rng), b = random_closed_form_map(rng);
    double c1 = sup_distance(a, b, band, 8, 4);
    double c2 = sup_distance(a, b, band, 16, 8);
    CHECK(c2 >= c1 - 1e-15);

    // triangle inequality on a fixed grid
    SymplecticMap c = random_closed_form_map(rng);
    double ab = sup_distance(a, b, band, 8, 4);
    double bc = sup_distance(b, c, band, 8, 4);
    double ac = sup_distance(a, c, band, 8, 4);
    CHECK(ac <= ab + bc + 1e-12);
}

TEST_CASE("jet linear part agrees with the Jacobian") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> xs(0.0, 1.0), ys(-0.4, 0.4);
    for (int trial = 0; trial < 30; ++trial) {
        SymplecticMap m = random_closed_form_map(rng);
        PhasePoint p(xs(rng), ys(rng), Space::Cylinder);
        Jet2 j = m.jet3(p);
        Jacobian2 J = m.jacobian(p);
        CHECK(j.linear().m11 == doctest::Approx(J.m11).epsilon(1e-11));
        CHECK(j.linear().m12 == doctest::Approx(J.m12).epsilon(1e-11));
        CHECK(j.linear().m21 == doctest::Approx(J.m21).epsilon(1e-11));
        CHECK(j.linear().m22 == doctest::Approx(J.m22).epsilon(1e-11));
    }
}

TEST_CASE("jet higher-order terms match Taylor coefficients") {
    TrigPoly v = TrigPoly::cosine(2, 0.3);
    auto m = SymplecticMap::vertical_shear(v);
    PhasePoint p(0.21, 0.05, Space::Cylinder);
    Jet2 j = m.jet3(p);
    auto d = v.eval_d3(p.x.value());
    CHECK(j.v.c[1][0] == doctest::Approx(d[1]).epsilon(1e-12));
    CHECK(j.v.c[2][0] == doctest::Approx(d[2] / 2.0).epsilon(1e-12));
    CHECK(j.v.c[3][0] == doctest::Approx(d[3] / 6.0).epsilon(1e-12));
    CHECK(j.v.c[0][1] == 1.0);
}

TEST_CASE("complex evaluation agrees with real on the real axis") {
    std::mt19937_64 rng(83);
    std::uniform_real_distribution<double> xs(0.0, 1.0), ys(-0.3, 0.3);
    for (int trial = 0; trial < 20; ++trial) {
        SymplecticMap m = random_closed_form_map(rng);
        REQUIRE(m.complex_evaluable());
        double x = xs(rng), y = ys(rng);
        ComplexPoint z{{x, 0.0}, {y, 0.0}};
        ComplexPoint w = m.eval_complex(z);
        PhasePoint q = m.eval(PhasePoint(x, y, Space::Cylinder));
        CHECK(std::fabs(w.x.real() - q.x.value()) < 1e-10);
        CHECK(std::fabs(w.y.real() - q.y) < 1e-10);
        CHECK(std::fabs(w.x.imag()) < 1e-10);
        CHECK(std::fabs(w.y.imag()) < 1e-10);
    }
}
