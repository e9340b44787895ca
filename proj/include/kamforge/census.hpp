#ifndef KAMFORGE_CENSUS_HPP
#define KAMFORGE_CENSUS_HPP

#include "kamforge/map.hpp"

#include <vector>

namespace kamforge {

enum class OrbitType { Hyperbolic, Elliptic, ParabolicAmbiguous };

const char* orbit_type_name(OrbitType t);

/// |trace| > 2 + tol_h -> hyperbolic; |trace| < 2 - tol_e -> elliptic;
/// otherwise parabolic/ambiguous (counted toward neither).
OrbitType classify(double trace, double tol_h = 1e-9, double tol_e = 1e-9);

/// One periodic point: location, minimal period, lift winding over that
/// period, trace of D(f^n), type and verification residual.
struct OrbitRecord {
    PhasePoint point;
    long minimal_period = 1;
    long winding = 0;
    double trace = 2.0;
    OrbitType type = OrbitType::ParabolicAmbiguous;
    double residual = 0.0;
    bool nondegenerate = false;
};

/// A cluster of converged roots with a near-singular Newton system
/// (typically a circle of periodic points of an unperturbed map).
struct DegenerateFamily {
    long period = 1;
    int point_count = 0;
    PhasePoint representative;
};

struct CensusCounts {
    long hyperbolic = 0;
    long elliptic = 0;
    long ambiguous = 0;
    long degenerate_families = 0;
};

struct Census {
    long n = 1;
    Region region;
    std::vector<OrbitRecord> records;       // minimal period exactly n
    std::vector<OrbitRecord> lower_period;  // converged, minimal period < n
    std::vector<DegenerateFamily> degenerate_families;
    long dropped_seeds = 0;

    CensusCounts counts() const;
    /// group records into orbits under the map (n points per orbit)
    long orbit_count(const SymplecticMap& map) const;
};

struct CensusOptions {
    int seed_density = 64;            // seeds along x
    int y_rows = 0;                   // 0: derived from the region aspect
    std::vector<long> windings = {0}; // x-winding candidates of f^n
    std::vector<PhasePoint> hints;    // extra seed points (e.g. forge output)
    bool grid_seeds = true;
    double newton_tol = 1e-12;
    int max_newton = 40;
    double dedup_radius = 1e-8;
    double degenerate_cond = 1e8;
    double residual_verify = 1e-10;
    double period_tol = 1e-9;
    Space space = Space::Cylinder;
};

/// Newton search for periodic points of the lifted displacement
/// f^n(z) - z - (w, 0), seeded on a deterministic grid plus hints.
Census find_periodic(const SymplecticMap& map, long n, const Region& region,
                     const CensusOptions& opt = {});

/// Least divisor d of n with f^d(p) = p within tol; throws NotPeriodic.
long minimal_period(const SymplecticMap& map, const PhasePoint& p, long n,
                    double tol = 1e-9);

} // namespace kamforge

#endif
