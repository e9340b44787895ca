#ifndef KAMFORGE_KAM_HPP
#define KAMFORGE_KAM_HPP

#include "kamforge/cohomology.hpp"
#include "kamforge/diophantine.hpp"
#include "kamforge/map.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace kamforge {

/// Invariant-circle candidate z -> (z + xi(z), eta(z)) with rotation number
/// theta: f(phi(z)) = phi(z + theta). Graph form (x-component a circle
/// diffeomorphism) whenever min(1 + xi') > 0.
class KamCurve {
public:
    KamCurve() = default;
    KamCurve(TrigPoly xi, TrigPoly eta, double theta, Space space = Space::Cylinder);
    static KamCurve flat(double y, double theta, Space space = Space::Cylinder);

    const TrigPoly& xi() const { return xi_; }
    const TrigPoly& eta() const { return eta_; }
    double theta() const { return theta_; }
    Space space() const { return space_; }

    bool graph_form() const;
    double min_graph_slope() const; // min over the circle of 1 + xi'
    PhasePoint at(double z) const;
    /// y = g(x) as a trig polynomial (inverts the x-component on a grid)
    TrigPoly graph_function(int grid = 0) const;

    SymplecticMap frame() const;         // psi1
    SymplecticMap frame_inverse() const; // psi1^{-1}
    /// psi1^{-1} o f o psi1: the map with this curve straightened to y = 0
    SymplecticMap conjugate(const SymplecticMap& f) const;

    /// sup over a z-grid of |f(phi(z)) - phi(z + theta)|
    double residual_against(const SymplecticMap& f, int grid) const;

    /// reparameterize z -> z + sigma (coefficients pick up phases)
    KamCurve shifted_parameter(double sigma) const;

    // diagnostics filled by the solver
    double residual = 0.0;
    double twist_min = 0.0;
    double strip_radius = 0.0;
    double strip_residual = 0.0;
    std::shared_ptr<const SymplecticMap> map_ref;

private:
    TrigPoly xi_, eta_;
    double theta_ = 0.0;
    Space space_ = Space::Cylinder;
};

struct RotationEstimate {
    double value = 0.0;
    double error_bound = 0.0;
};

/// Weighted Birkhoff average of lift increments along the orbit of `start`;
/// the error bound is the spread of half-orbit estimates. Throws
/// NonConvergent when the spread exceeds `oscillation_bound`.
RotationEstimate rotation_number(const SymplecticMap& map, const PhasePoint& start,
                                 long n_iter, double oscillation_bound = 0.05);

struct InvarianceOptions {
    double tol = 1e-11;          // target sup residual on the solve grid
    double divisor_floor = 1e-8; // small-divisor rejection threshold
    double tail_energy = 1e-12;  // top-decile relative coefficient energy cap
    int residual_grid_factor = 4;
    Space space = Space::Cylinder;
    double twist_check_tol = 0.0; // twist entries must exceed this
    bool validate_strip = true;
};

/// Fourier-Newton solve of f(phi(z)) = phi(z + theta) in coefficient space;
/// the linearized step is solved by two cohomological equations in the
/// adapted frame along the current curve. Throws NewtonDiverged (with the
/// residual history) or TwistLost.
KamCurve solve_invariance(const SymplecticMap& map, const DiophantineCert& cert,
                          const KamCurve& guess, int fourier_modes, int max_iters,
                          const InvarianceOptions& options = {});

/// Chart (z1, z2) -> (z1 + beta(z1) z2, z2) in which the on-circle
/// derivative becomes the constant unipotent [[1, alpha*], [0, 1]].
struct AdaptedChart {
    TrigPoly beta;
    TrigPoly alpha;          // twist profile in the straightened frame
    double alpha_star = 0.0; // mean of alpha
    double r = 0.0;          // validity strip radius
    double delta = 0.0;      // validity band |z2| < delta
    double unipotent_defect = 0.0;
};

AdaptedChart adapted_coordinates(const SymplecticMap& map, const KamCurve& curve,
                                 double divisor_floor = 1e-8);

struct SmallnessReport {
    double sup_norm = 0.0;
    double threshold = 0.0; // delta^{3/2}
    bool pass = false;
    bool complex_used = false;
};

/// Checks sup over V(r, delta) of |F2(z) - (z1 + theta + alpha* z2, z2)|
/// against delta^{3/2}, where F2 is the map conjugated by the curve frame
/// and the adapted chart. Complex strip grids are used when every node
/// supports complex evaluation; otherwise a real grid with a caveat.
SmallnessReport kam_smallness(const SymplecticMap& map, const KamCurve& curve,
                              const AdaptedChart& chart, double r, double delta,
                              int grid_x = 64, int grid_arg = 8);

/// Signed y-displacement of f(C_g) over C_g, reparameterized by x; true if
/// a sign change or a zero is detected. Throws GraphFolded when f(C_g) is
/// not a graph over x at sample resolution.
bool intersection_check(const SymplecticMap& map, const TrigPoly& g, int samples,
                        Space space = Space::Cylinder);

} // namespace kamforge

#endif
