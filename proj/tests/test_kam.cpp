#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kamforge/errors.hpp"
#include "kamforge/kam.hpp"

#include "test_helpers.hpp"

#include <cmath>

using namespace kamforge;
using namespace kamforge::testing;

namespace {
const double theta_g = golden_mean();
// height of fbar's golden circle: sin(2 pi c) = theta_g
const double golden_c = std::asin(theta_g) / two_pi;
} // namespace

TEST_CASE("diophantine certificate for the golden mean") {
    DiophantineCert cert = diophantine_certificate(theta_g, 0.0, 10000);
    const double limit = 1.0 / std::sqrt(5.0);
    CHECK(std::fabs(cert.c - limit) <= 0.02 * limit);
    CertScan scan = scan_certificate(cert);
    CHECK(scan.violations == 0);
    CHECK(scan.min_quality >= cert.c * (1.0 - 1e-12));
    // Fibonacci denominators appear among the convergents
    bool has_34 = false;
    for (const Convergent& cv : cert.convergents) has_34 |= cv.q == 34;
    CHECK(has_34);
}

TEST_CASE("diophantine certificate for sqrt(2)-1") {
    DiophantineCert cert = diophantine_certificate(std::sqrt(2.0) - 1.0, 0.0, 10000);
    const double limit = 1.0 / (2.0 * std::sqrt(2.0)); // ~0.3536
    CHECK(std::fabs(cert.c - limit) <= 0.02 * limit);
    CHECK(scan_certificate(cert).violations == 0);
}

TEST_CASE("rational rotation numbers are rejected") {
    CHECK_THROWS_AS(diophantine_certificate(1.0 / 3.0, 0.0, 10000), Error);
    bool code_ok = false;
    try {
        diophantine_certificate(0.25, 0.0, 100);
    } catch (const Error& e) {
        code_ok = e.code() == ErrorCode::RationalDetected;
    }
    CHECK(code_ok);
}

TEST_CASE("cohomological equation: constants, example, resonance") {
    CohomologySolution c = solve_cohomological(TrigPoly(0.7), theta_g);
    CHECK(c.alpha_bar == 0.7);
    CHECK(c.beta.harmonics().empty());
    CHECK(c.residual <= 1e-14);

    CohomologySolution s = solve_cohomological(TrigPoly::cosine(1), theta_g);
    CHECK(s.alpha_bar == 0.0);
    CHECK(s.residual <= 1e-10);

    bool named_k = false;
    try {
        solve_cohomological(TrigPoly::cosine(3), 1.0 / 3.0);
    } catch (const SmallDivisorResonance& e) {
        named_k = e.harmonic() == 3;
    }
    CHECK(named_k);
}

TEST_CASE("cohomological residual over 100 random profiles") {
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        TrigPoly alpha = random_trig(rng, 32, 1.0);
        CohomologySolution s = solve_cohomological(alpha, theta_g, 1e-8, 1024);
        worst = std::max(worst, s.residual);
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("rotation number: translations, fbar rows, golden circle") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> th(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double t = th(rng);
        RotationEstimate est = rotation_number(SymplecticMap::translation(t),
                                               PhasePoint(th(rng), 0.0, Space::Cylinder), 64);
        CHECK(std::fabs(est.value - t) <= 1e-14);
    }
    // fbar on the row y = c rotates by sin(2 pi c)
    for (double c : {0.04, 0.11, 0.23}) {
        RotationEstimate est =
            rotation_number(fbar(), PhasePoint(0.3, c, Space::Cylinder), 128);
        CHECK(std::fabs(est.value - std::sin(two_pi * c)) <= 1e-12);
    }
    RotationEstimate est =
        rotation_number(fbar(), PhasePoint(0.0, golden_c, Space::Cylinder), 256);
    CHECK(std::fabs(est.value - theta_g) <= 1e-8);
}

TEST_CASE("invariance solve: rigid translation needs zero work") {
    DiophantineCert cert = diophantine_certificate(theta_g, 0.0, 1000);
    KamCurve guess = KamCurve::flat(0.0, theta_g);
    KamCurve curve = solve_invariance(SymplecticMap::translation(theta_g), cert, guess, 8, 5);
    CHECK(curve.residual <= 1e-13);
    CHECK(curve.xi().coeff_abs_sum() == 0.0);
    CHECK(curve.eta().coeff_abs_sum() == 0.0);
}

TEST_CASE("invariance solve: perturbed fbar at the golden rotation") {
    DiophantineCert cert = diophantine_certificate(theta_g, 0.0, 10000);
    auto map = SymplecticMap::composition(
        {SymplecticMap::vertical_shear(TrigPoly::sine(1, 1e-3)), fbar()});
    KamCurve guess = KamCurve::flat(golden_c, theta_g);
    KamCurve curve = solve_invariance(map, cert, guess, 64, 25);
    CHECK(curve.residual <= 1e-10);
    CHECK(curve.graph_form());
    CHECK(curve.twist_min > 0.0);
    // re-solving at 4x the modes moves the coefficients by <= 1e-9
    KamCurve fine = solve_invariance(map, cert, guess, 256, 25);
    double drift = std::fabs(curve.eta().mean() - fine.eta().mean());
    for (int k = 1; k <= 256; ++k) {
        auto [c1, s1] = curve.eta().coeff(k);
        auto [c2, s2] = fine.eta().coeff(k);
        drift = std::max({drift, std::fabs(c1 - c2), std::fabs(s1 - s2)});
        auto [cx1, sx1] = curve.xi().coeff(k);
        auto [cx2, sx2] = fine.xi().coeff(k);
        drift = std::max({drift, std::fabs(cx1 - cx2), std::fabs(sx1 - sx2)});
    }
    CHECK(drift <= 1e-9);
    // the stored residual is reproducible from the map reference
    CHECK(curve.residual_against(*curve.map_ref, 2048) <= 2.0 * std::max(curve.residual, 1e-12));
}

TEST_CASE("invariance solve diverges for an oversized perturbation") {
    DiophantineCert cert = diophantine_certificate(theta_g, 0.0, 1000);
    auto map = SymplecticMap::composition(
        {SymplecticMap::vertical_shear(TrigPoly::sine(1, 10.0)), fbar()});
    KamCurve guess = KamCurve::flat(golden_c, theta_g);
    CHECK_THROWS_AS(solve_invariance(map, cert, guess, 32, 12), Error);
    try {
        solve_invariance(map, cert, guess, 32, 12);
    } catch (const NewtonDiverged& e) {
        CHECK(!e.residual_history().empty());
    } catch (const Error&) {
        // TwistLost is an acceptable failure mode as well; success is not
    }
}

TEST_CASE("adapted coordinates: already-adapted twist and fbar's circle") {
    DiophantineCert cert = diophantine_certificate(theta_g, 0.0, 1000);
    // (x, y) -> (x + theta + y, y): alpha == 1, beta == 0, alpha* = 1
    auto tw = twist_with_rotation(theta_g);
    KamCurve flat = KamCurve::flat(0.0, theta_g);
    AdaptedChart chart = adapted_coordinates(tw, flat);
    CHECK(chart.alpha_star == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(chart.beta.coeff_abs_sum() <= 1e-12);
    CHECK(chart.unipotent_defect <= 1e-8);

    // fbar on its golden circle: alpha is the constant 2 pi cos(2 pi c)
    KamCurve circle = KamCurve::flat(golden_c, theta_g);
    AdaptedChart fchart = adapted_coordinates(fbar(), circle);
    CHECK(fchart.alpha_star == doctest::Approx(two_pi * std::cos(two_pi * golden_c)).epsilon(1e-10));
    CHECK(fchart.beta.coeff_abs_sum() <= 1e-10);
}

TEST_CASE("adapted coordinates reject rational rotation numbers") {
    // flow of H = y^2 a(x)/2 fixes y=0 pointwise with twist alpha(x) = a(x);
    // a resonant harmonic (k = 4 at theta = 1/4) blocks the chart equation
    TrigPoly a = TrigPoly(1.0) + TrigPoly::cosine(4, 0.3);
    TrigPoly da = a.derivative();
    HamiltonianField field = HamiltonianField::generic(HamiltonianField::Generic{
        [a](double x, double y) { return 0.5 * y * y * a.eval(x); },
        [da](double x, double y) { return 0.5 * y * y * da.eval(x); },
        [a](double x, double y) { return y * a.eval(x); },
        [a, da](double x, double y) { return 0.5 * y * y * a.eval_d2(x)[2] + 0.0 * da.eval(x); },
        [da](double x, double y) { return y * da.eval(x); },
        [a](double x, double) { return a.eval(x); },
        "xdependent twist"});
    auto twist_flow = SymplecticMap::flow_map(field, 1.0, IntegratorConfig{1e-2, 1e-14, 64});
    auto m = SymplecticMap::composition({SymplecticMap::translation(0.25), twist_flow});
    bool resonant = false;
    try {
        adapted_coordinates(m, KamCurve::flat(0.0, 0.25));
    } catch (const SmallDivisorResonance& e) {
        resonant = true;
        CHECK(e.harmonic() % 4 == 0);
    }
    CHECK(resonant);
}

TEST_CASE("alpha* stays positive when the sampled twist is positive") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 5; ++trial) {
        TrigPoly xi = random_trig(rng, 3, 0.01);
        xi = xi - TrigPoly(xi.mean());
        TrigPoly eta = random_trig(rng, 3, 0.05);
        auto inner = twist_with_rotation(theta_g);
        auto m = SymplecticMap::composition({SymplecticMap::curve_frame_inverse(xi, eta),
                                             inner,
                                             SymplecticMap::curve_frame(xi, eta)});
        KamCurve curve(xi, eta, theta_g);
        AdaptedChart chart = adapted_coordinates(m, curve);
        CHECK(chart.alpha_star > 0.0);
    }
}

TEST_CASE("KAM smallness: integrable model, shear bump, boundary case") {
    const double alpha = 1.3;
    auto model = SymplecticMap::composition(
        {SymplecticMap::integrable_twist(alpha), SymplecticMap::translation(theta_g)});
    KamCurve flat = KamCurve::flat(0.0, theta_g);
    AdaptedChart chart = adapted_coordinates(model, flat);
    SmallnessReport clean = kam_smallness(model, flat, chart, 0.05, 0.05);
    CHECK(clean.sup_norm <= 1e-12);
    CHECK(clean.pass);
    CHECK(clean.complex_used);

    // adding a vertical shear of sup-norm s: sup = s on the real band
    const double s = 1e-3;
    auto bumped = SymplecticMap::composition(
        {model, SymplecticMap::vertical_shear(TrigPoly::sine(1, s))});
    SmallnessReport rep = kam_smallness(bumped, flat, chart, 0.0, 0.05, 128, 8);
    CHECK(rep.sup_norm == doctest::Approx(s).epsilon(5e-3));
    CHECK(rep.sup_norm <= s * (1.0 + 1e-12));
    CHECK(rep.pass); // 1e-3 < 0.05^{3/2} = 0.0112

    // delta = 0.01: threshold exactly 1e-3 = s; the strict inequality fails,
    // certified through the complex strip where |sin| exceeds 1
    SmallnessReport fail = kam_smallness(bumped, flat, chart, 0.05, 0.01, 128, 8);
    CHECK(fail.sup_norm >= s);
    CHECK(!fail.pass);
}

TEST_CASE("intersection check") {
    // fbar is a Hamiltonian shear: zero-mean vertical displacement over graphs
    CHECK(intersection_check(fbar(), TrigPoly(0.2), 64));
    // uniform upward translation misses its image
    auto up = SymplecticMap::vertical_shear(TrigPoly(0.0) + TrigPoly(0.1));
    CHECK(!intersection_check(up, TrigPoly(0.0), 64));
    // identity: zero displacement counts as intersecting
    CHECK(intersection_check(SymplecticMap::identity(), TrigPoly(0.0), 64));
    // a zero-mean vertical shear displaces with a sign change
    auto shear = SymplecticMap::vertical_shear(TrigPoly::sine(1, 0.05));
    CHECK(intersection_check(shear, TrigPoly(0.1), 64));
}

TEST_CASE("intersection check reports folding distinctly") {
    // a strong horizontal shear in y folds the image of a steep graph
    auto fold = SymplecticMap::horizontal_shear(TrigPoly::sine(1, -2.0));
    bool folded = false;
    try {
        intersection_check(fold, TrigPoly::sine(1, 0.45), 128);
    } catch (const Error& e) {
        folded = e.code() == ErrorCode::GraphFolded;
    }
    CHECK(folded);
}
