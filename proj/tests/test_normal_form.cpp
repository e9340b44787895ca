#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kamforge/errors.hpp"
#include "kamforge/forge.hpp"
#include "kamforge/normal_form.hpp"

#include "test_helpers.hpp"

#include <cmath>

using namespace kamforge;
using namespace kamforge::testing;

namespace {

// polar twist about the origin of the (dx, dy) chart: rotation by
// alpha0 + alpha1 r^2; exact evaluation plus its exact degree-3 jet
struct PolarTwist {
    double alpha0, alpha1;
    PhasePoint center{0.5, 0.0, Space::Cylinder};

    PhasePoint eval(const PhasePoint& p) const {
        const double dx = circle_delta(p.x.value(), center.x.value());
        const double dy = p.y - center.y;
        const double ang = alpha0 + alpha1 * (dx * dx + dy * dy);
        const double c = std::cos(ang), s = std::sin(ang);
        return PhasePoint(center.x.value() + c * dx - s * dy,
                          center.y + s * dx + c * dy, p.space);
    }

    Jet2 jet3() const {
        const double c = std::cos(alpha0), s = std::sin(alpha0);
        Jet2 j;
        j.image = center;
        TruncSeries2 X = TruncSeries2::var_x(), Y = TruncSeries2::var_y();
        TruncSeries2 rho = X * X + Y * Y;
        // cos(a0 + a1 rho) = c - a1 rho s + O(rho^2), likewise sine
        TruncSeries2 cosS = TruncSeries2::constant(c) - rho.scaled(alpha1 * s);
        TruncSeries2 sinS = TruncSeries2::constant(s) + rho.scaled(alpha1 * c);
        j.u = cosS * X - sinS * Y;
        j.v = sinS * X + cosS * Y;
        return j;
    }
};

} // namespace

TEST_CASE("twist coefficients of the synthetic polar twist") {
    PolarTwist map{1.0, 0.5};
    TwistCoefficients tc = twist_coefficient_from_jet(map.jet3());
    CHECK(std::fabs(tc.alpha0 - 1.0) <= 1e-8);
    CHECK(std::fabs(tc.alpha1 - 0.5) <= 1e-8);
    CHECK(tc.radial_defect <= 1e-10);
    CHECK(tc.moser_stable());

    PolarTwist unstable{0.7, -0.3};
    TwistCoefficients tu = twist_coefficient_from_jet(unstable.jet3());
    CHECK(std::fabs(tu.alpha0 - 0.7) <= 1e-8);
    CHECK(std::fabs(tu.alpha1 + 0.3) <= 1e-8);
    CHECK(!tu.moser_stable());
}

TEST_CASE("alpha1 is invariant under a symplectic quadratic conjugation") {
    // conjugating by (x, y) -> (x, y + a x^2) must not change the twist data
    PolarTwist map{1.0, 0.5};
    const double a = 0.35;
    Jet2 T = Jet2::identity_at(map.center);
    T.v = T.v + (TruncSeries2::var_x() * TruncSeries2::var_x()).scaled(a);
    Jet2 Tinv = T.inverse_at(map.center);
    Jet2 conj = Jet2::chain(Jet2::chain(Tinv, map.jet3()), T);
    TwistCoefficients tc = twist_coefficient_from_jet(conj);
    CHECK(std::fabs(tc.alpha0 - 1.0) <= 1e-10);
    CHECK(std::fabs(tc.alpha1 - 0.5) <= 1e-8);
}

TEST_CASE("radial rotation-number fit agrees with alpha1 within 5 percent") {
    PolarTwist map{1.0, 0.5};
    // rotation number of the angle map on circles r = const is
    // (alpha0 + alpha1 r^2)/2pi; fit the slope against r^2
    std::vector<double> r2s, rots;
    for (double r : {0.05, 0.08, 0.11, 0.14}) {
        PhasePoint p(map.center.x.value() + r, map.center.y, Space::Cylinder);
        double angle_sum = 0.0;
        double px = r, py = 0.0;
        const int n = 2048;
        for (int k = 0; k < n; ++k) {
            PhasePoint q = map.eval(p);
            const double qx = circle_delta(q.x.value(), map.center.x.value());
            const double qy = q.y - map.center.y;
            double da = std::atan2(qy, qx) - std::atan2(py, px);
            da -= two_pi * std::round(da / two_pi);
            angle_sum += da;
            p = q;
            px = qx;
            py = qy;
        }
        r2s.push_back(r * r);
        rots.push_back(angle_sum / n);
    }
    // least squares slope of rot vs r^2
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < r2s.size(); ++i) {
        mx += r2s[i];
        my += rots[i];
    }
    mx /= r2s.size();
    my /= rots.size();
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < r2s.size(); ++i) {
        sxx += (r2s[i] - mx) * (r2s[i] - mx);
        sxy += (r2s[i] - mx) * (rots[i] - my);
    }
    const double slope = sxy / sxx;
    TwistCoefficients tc = twist_coefficient_from_jet(map.jet3());
    CHECK(std::fabs(slope - tc.alpha1) <= 0.05 * std::fabs(tc.alpha1));
    // and the intercept recovers alpha0
    CHECK(std::fabs((my - slope * mx) - tc.alpha0) <= 1e-3);
}

TEST_CASE("order-4 resonance is rejected") {
    PolarTwist map{two_pi / 4.0, 0.5};
    bool resonant = false;
    try {
        twist_coefficient_from_jet(map.jet3());
    } catch (const Error& e) {
        resonant = e.code() == ErrorCode::ResonantEigenvalue;
    }
    CHECK(resonant);
    // order 3 as well
    PolarTwist map3{two_pi / 3.0, 0.5};
    CHECK_THROWS_AS(twist_coefficient_from_jet(map3.jet3()), Error);
}

TEST_CASE("twist coefficient from a composed symplectic map") {
    // elliptic fixed point of the forged twist map: f^3 at an elliptic
    // grid point; alpha0 must match acos(trace/2)
    auto F = twist_with_rotation(1.0 / 3.0);
    ForgeResult forged = forge(F, build_grid(1, 3, 1), 1e-2);
    const PredictedOrbit* elliptic = nullptr;
    for (const PredictedOrbit& o : forged.orbits)
        if (o.type == OrbitType::Elliptic) elliptic = &o;
    REQUIRE(elliptic != nullptr);
    auto cube = SymplecticMap::composition(
        {forged.perturbed, forged.perturbed, forged.perturbed});
    TwistCoefficients tc = twist_coefficient(cube, elliptic->points[0], 1e-8);
    CHECK(std::fabs(std::cos(tc.alpha0) - 0.5 * elliptic->measured_trace) <= 1e-10);
    CHECK(std::isfinite(tc.alpha1));
    CHECK(tc.radial_defect <= 1e-6);
}

TEST_CASE("non-elliptic and non-fixed inputs are rejected") {
    auto tw = SymplecticMap::integrable_twist(1.0);
    CHECK_THROWS_AS(twist_coefficient(tw, PhasePoint(0.2, 0.0, Space::Cylinder)),
                    Error); // fixed but parabolic (trace 2)
    PolarTwist map{1.0, 0.5};
    (void)map;
    CHECK_THROWS_AS(twist_coefficient(tw, PhasePoint(0.2, 0.3, Space::Cylinder)),
                    Error); // not fixed
}
