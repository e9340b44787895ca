#include "kamforge/forge.hpp"

#include "kamforge/analysis.hpp"
#include "kamforge/errors.hpp"
#include "kamforge/hamiltonian.hpp"

#include <cmath>
#include <numeric>

namespace kamforge {

int ResonantGrid::index(int i, int j) const {
    const long g2 = 2L * gamma;
    long m = (i + g2 * j * p) % M;
    if (m < 0) m += M;
    return static_cast<int>(m);
}

ResonantGrid build_grid(int p, int N, int gamma) {
    if (N < 1 || gamma < 1)
        throw Error(ErrorCode::DomainError, "grid requires N >= 1 and gamma >= 1");
    const int pr = ((p % N) + N) % N;
    if (std::gcd(pr == 0 ? N : pr, N) != 1)
        throw Error(ErrorCode::NotLowestTerms,
                    "p/N = " + std::to_string(p) + "/" + std::to_string(N) +
                        " is not in lowest terms; grid points collide");
    ResonantGrid grid{p, N, gamma, 2 * gamma * N};
    // verify the index bijection and the uniform-grid identification
    std::vector<bool> seen(grid.M, false);
    for (int i = 0; i < 2 * gamma; ++i) {
        for (int j = 0; j < N; ++j) {
            const int m = grid.index(i, j);
            if (seen[m])
                throw Error(ErrorCode::NotLowestTerms, "grid index bijection failed");
            seen[m] = true;
            const double direct = wrap01(static_cast<double>(i) / grid.M +
                                         static_cast<double>(j) * p / N);
            if (circle_distance(direct, static_cast<double>(m) / grid.M) > 1e-15)
                throw Error(ErrorCode::DomainError, "grid point mismatch beyond 1e-15");
        }
    }
    return grid;
}

BumpProfile build_bump(const ResonantGrid& grid) {
    const int M = grid.M;
    std::vector<double> targets(M, 0.0);
    for (int i = 0; i < 2 * grid.gamma; ++i) {
        const int m = grid.index(i, 0);
        targets[m] = (i % 2 == 0 ? 1.0 : -1.0) / (two_pi * M);
    }
    BumpProfile bump;
    bump.grid = grid;
    bump.envelope = TrigPoly::interpolate(targets);
    if (bump.envelope.degree() >= M)
        throw Error(ErrorCode::InterpolationSingular, "envelope degree reached M");
    bump.dh = bump.envelope * TrigPoly::sine(M);
    if (bump.dh.mean() != 0.0)
        throw Error(ErrorCode::InterpolationSingular,
                    "unexpected mean in h': frequency bookkeeping violated");
    bump.h = bump.dh.antiderivative();
    for (int i = 0; i < 2 * grid.gamma; ++i) {
        for (int j = 0; j < grid.N; ++j) {
            const double x = grid.point(i, j);
            const auto d = bump.h.eval_d2(x);
            const double target = j == 0 ? (i % 2 == 0 ? 1.0 : -1.0) : 0.0;
            bump.dh_grid_residual = std::max(bump.dh_grid_residual, std::fabs(d[1]));
            bump.ddh_grid_residual =
                std::max(bump.ddh_grid_residual, std::fabs(d[2] - target));
        }
    }
    return bump;
}

ForgePlan plan_forge(const SymplecticMap& base, const ResonantGrid& grid,
                     const ForgeOptions& options) {
    ForgePlan plan{base, grid, build_bump(grid), {}, 0.0, options};
    const double theta = grid.theta();
    // resonant-circle precondition: F(x,0) = (x + p/N, 0)
    for (int s = 0; s < options.precheck_samples; ++s) {
        const double x = static_cast<double>(s) / options.precheck_samples;
        const PhasePoint img = base.eval(PhasePoint(x, 0.0, options.space));
        const double dev = std::max(circle_distance(img.x.value(), wrap01(x + theta)),
                                    options.space == Space::Torus
                                        ? circle_distance(img.y, 0.0)
                                        : std::fabs(img.y));
        if (dev > options.resonance_tol)
            throw Error(ErrorCode::NotResonantCircle,
                        "y=0 is not a p/N resonant circle: deviation " + fmt17(dev) +
                            " at x=" + fmt17(x));
    }
    // one-step twist along the circle
    for (int s = 0; s < options.precheck_samples; ++s) {
        const double x = static_cast<double>(s) / options.precheck_samples;
        const double w1 =
            base.jacobian(PhasePoint(x, 0.0, options.space)).m12;
        if (!(w1 > 0.0))
            throw Error(ErrorCode::NoTwist,
                        "one-step twist entry not positive at x=" + fmt17(x));
    }
    plan.twist_w.resize(2 * grid.gamma);
    for (int i = 0; i < 2 * grid.gamma; ++i) {
        const PhasePoint head(grid.point(i, 0), 0.0, options.space);
        const double w = base.iterate(head, grid.N).jacobian.m12;
        if (!(w > 0.0))
            throw Error(ErrorCode::NoTwist, "N-step twist entry not positive at orbit head");
        plan.twist_w[i] = w;
    }
    plan.dh_sup = plan.bump.dh.sup_norm();
    return plan;
}

ForgeResult forge(const ForgePlan& plan, double t) {
    if (t < 0.0) throw Error(ErrorCode::DomainError, "forge requires t >= 0");
    ForgeResult result;
    result.base = plan.base;
    result.grid = plan.grid;
    result.bump = plan.bump;
    result.t = t;
    result.perturbation_sup = t * plan.dh_sup;

    SymplecticMap kick =
        plan.options.bump_cutoff
            ? integrate_flow(bump_hamiltonian(plan.bump.h.scaled(t), plan.options.delta,
                                              plan.options.cutoff_width),
                             1.0)
            : SymplecticMap::vertical_shear(plan.bump.dh.scaled(t));
    result.perturbed = SymplecticMap::composition({kick, plan.base});

    const int N = plan.grid.N;
    for (int i = 0; i < 2 * plan.grid.gamma; ++i) {
        PredictedOrbit orbit;
        orbit.i = i;
        orbit.twist_w = plan.twist_w[i];
        const double sign = i % 2 == 0 ? 1.0 : -1.0;
        orbit.predicted_trace = 2.0 + sign * t * plan.twist_w[i];
        for (int j = 0; j < N; ++j)
            orbit.points.emplace_back(plan.grid.point(i, j), 0.0, plan.options.space);
        IterateResult r = result.perturbed.iterate(orbit.points[0], N);
        orbit.orbit_residual = PhasePoint::distance(r.p, orbit.points[0]);
        orbit.measured_trace = r.jacobian.trace();
        orbit.type = t == 0.0 ? OrbitType::ParabolicAmbiguous
                              : classify(orbit.measured_trace);
        result.max_orbit_residual = std::max(result.max_orbit_residual, orbit.orbit_residual);
        if (orbit.orbit_residual > plan.options.orbit_residual_tol)
            throw Error(ErrorCode::NotResonantCircle,
                        "forged orbit lost periodicity: residual " +
                            fmt17(orbit.orbit_residual));
        result.orbits.push_back(std::move(orbit));
    }
    return result;
}

ForgeResult forge(const SymplecticMap& base, const ResonantGrid& grid, double t,
                  const ForgeOptions& options) {
    return forge(plan_forge(base, grid, options), t);
}

SelectedT select_t(const ForgePlan& plan, double eps) {
    if (!(eps > 0.0))
        throw Error(ErrorCode::EmptyAdmissibleRange, "perturbation budget must be positive");
    SelectedT sel;
    sel.budget_bound = plan.dh_sup > 0.0 ? eps / plan.dh_sup
                                         : std::numeric_limits<double>::infinity();
    double wmin = plan.twist_w[0], wmax = plan.twist_w[0];
    for (double w : plan.twist_w) {
        wmin = std::min(wmin, w);
        wmax = std::max(wmax, w);
    }
    // elliptic traces 2 - t w_i must stay above -2 + t wmin / 2
    sel.trace_bound = 4.0 / (wmax + 0.5 * wmin) * (1.0 - 1e-9);
    sel.t = std::min(sel.budget_bound, sel.trace_bound);
    sel.margin = 0.5 * sel.t * wmin;
    if (!(sel.t >= 1e-13))
        throw Error(ErrorCode::EmptyAdmissibleRange,
                    "admissible t below working precision: " + fmt17(sel.t));
    return sel;
}

} // namespace kamforge
