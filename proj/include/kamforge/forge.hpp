#ifndef KAMFORGE_FORGE_HPP
#define KAMFORGE_FORGE_HPP

#include "kamforge/census.hpp"
#include "kamforge/map.hpp"
#include "kamforge/trigpoly.hpp"

#include <vector>

namespace kamforge {

/// The resonant grid x_{i,j} = i/(2 gamma N) + j p/N for i < 2 gamma,
/// j < N. As a set it equals the uniform grid {m/M}, M = 2 gamma N, via
/// the index bijection (i,j) -> (i + 2 gamma j p) mod M.
struct ResonantGrid {
    int p = 1;
    int N = 1;
    int gamma = 1;
    int M = 2;

    double theta() const { return static_cast<double>(p) / N; }
    int index(int i, int j) const;
    double point(int i, int j) const { return static_cast<double>(index(i, j)) / M; }
};

ResonantGrid build_grid(int p, int N, int gamma);

/// Bump potential with prescribed derivative data on the grid:
/// h'(x) = c(x) sin(2 pi M x) with c interpolating h''/(2 pi M) targets,
/// so h' vanishes on the whole grid and h'' is +-1 at the orbit heads.
struct BumpProfile {
    TrigPoly h;        // potential (mean-free antiderivative of dh)
    TrigPoly dh;       // h'
    TrigPoly envelope; // c
    ResonantGrid grid;
    double dh_grid_residual = 0.0;  // max |h'| over the grid
    double ddh_grid_residual = 0.0; // max |h'' - target| over the grid
};

BumpProfile build_bump(const ResonantGrid& grid);

struct ForgeOptions {
    Space space = Space::Cylinder;
    bool bump_cutoff = false; // localize the shear via the y-cutoff flow
    double delta = 0.2;       // cutoff geometry when bump_cutoff is set
    double cutoff_width = 0.05;
    double resonance_tol = 1e-10;
    double orbit_residual_tol = 1e-10;
    int precheck_samples = 256;
};

/// Pre-forge data: twist entries along the resonant circle and the bump.
struct ForgePlan {
    SymplecticMap base;
    ResonantGrid grid;
    BumpProfile bump;
    std::vector<double> twist_w; // w_i, i = 0..2 gamma - 1
    double dh_sup = 0.0;
    ForgeOptions options;
};

ForgePlan plan_forge(const SymplecticMap& base, const ResonantGrid& grid,
                     const ForgeOptions& options = {});

struct PredictedOrbit {
    int i = 0;
    std::vector<PhasePoint> points; // p_{i,0..N-1}
    double twist_w = 0.0;
    double predicted_trace = 2.0;
    double measured_trace = 2.0;
    OrbitType type = OrbitType::ParabolicAmbiguous;
    double orbit_residual = 0.0; // N-fold return distance of p_{i,0}
};

struct ForgeResult {
    SymplecticMap base;
    SymplecticMap perturbed; // base o shear(t h')
    ResonantGrid grid;
    BumpProfile bump;
    double t = 0.0;
    double perturbation_sup = 0.0; // t * sup |h'|
    std::vector<PredictedOrbit> orbits;
    double max_orbit_residual = 0.0;
};

ForgeResult forge(const ForgePlan& plan, double t);
ForgeResult forge(const SymplecticMap& base, const ResonantGrid& grid, double t,
                  const ForgeOptions& options = {});

struct SelectedT {
    double t = 0.0;
    double budget_bound = 0.0; // eps / sup|h'|
    double trace_bound = 0.0;  // keeps elliptic traces inside (-2, 2)
    double margin = 0.0;       // realized min_i t w_i / 2
};

/// Largest admissible t: perturbation sup-norm <= eps and every elliptic
/// predicted trace inside (-2 + margin, 2 - margin), margin = min t w_i / 2.
SelectedT select_t(const ForgePlan& plan, double eps);

} // namespace kamforge

#endif
