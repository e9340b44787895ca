#ifndef KAMFORGE_ANALYSIS_HPP
#define KAMFORGE_ANALYSIS_HPP

#include "kamforge/map.hpp"

#include <optional>

namespace kamforge {

/// Entry (1,2) of the Jacobian of map^n at (x, g(x)); the sign of the
/// horizontal response to a vertical displacement along the invariant graph.
/// Invariance of the graph is checked along the orbit of x; violation beyond
/// `invariance_tol` raises InvarianceViolation.
double twist_entry(const SymplecticMap& map, const TrigPoly& graph, double x, long n,
                   Space space = Space::Cylinder, double invariance_tol = 1e-8);

struct ConeViolation {
    double x;     // sampled base point
    long step;    // iterate 1..n at which the cone was left
    double s, t;  // offending image vector
};

struct ConeReport {
    bool passed = true;
    long samples = 0;
    std::optional<ConeViolation> first_violation;
};

/// Checks that D(map^k) sends the vertical (0,1) into the open cone
/// { s > 0, t > g'(x) s } at every sampled curve point for all 1 <= k <= n.
ConeReport cone_check(const SymplecticMap& map, const TrigPoly& graph, long n,
                      int sample_count, Space space = Space::Cylinder,
                      double invariance_tol = 1e-8);

/// sup over a deterministic (nx x ny) grid on `region` of the phase distance
/// between the two images. Nested grids: doubling nx, ny refines the grid.
double sup_distance(const SymplecticMap& a, const SymplecticMap& b, const Region& region,
                    int nx, int ny, Space space = Space::Cylinder);

} // namespace kamforge

#endif
