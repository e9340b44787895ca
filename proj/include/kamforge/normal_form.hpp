#ifndef KAMFORGE_NORMAL_FORM_HPP
#define KAMFORGE_NORMAL_FORM_HPP

#include "kamforge/jet.hpp"
#include "kamforge/map.hpp"

namespace kamforge {

/// Third-order Birkhoff data at an elliptic fixed point: the rotation
/// alpha0 and the first twist coefficient alpha1 of
/// alpha(x, y) = alpha0 + alpha1 (x^2 + y^2). Moser stability <=> alpha1 > 0.
struct TwistCoefficients {
    double alpha0 = 0.0;
    double alpha1 = 0.0;
    /// |Re(conj(lambda) c21)| after normalization; vanishes for exact
    /// area-preserving jets (diagnostic)
    double radial_defect = 0.0;
    bool moser_stable() const { return alpha1 > 0.0; }
};

/// Birkhoff normalization through order 3 of a degree-3 jet whose base
/// point is fixed and elliptic. Throws ResonantEigenvalue when e^{i alpha0}
/// is a root of unity of order <= 4.
TwistCoefficients twist_coefficient_from_jet(const Jet2& jet, double resonance_tol = 1e-8);

/// Jet extraction at the fixed point followed by the normalization above.
TwistCoefficients twist_coefficient(const SymplecticMap& map, const PhasePoint& fixed_point,
                                    double fixed_tol = 1e-9, double resonance_tol = 1e-8);

} // namespace kamforge

#endif
