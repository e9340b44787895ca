#ifndef KAMFORGE_COHOMOLOGY_HPP
#define KAMFORGE_COHOMOLOGY_HPP

#include "kamforge/trigpoly.hpp"

namespace kamforge {

struct CohomologySolution {
    TrigPoly beta;
    double alpha_bar = 0.0;
    double residual = 0.0; // sup |beta(x+theta) - beta(x) + alpha_bar - alpha(x)|
};

/// Solve alpha(x) = beta(x + theta) - beta(x) + alpha_bar harmonic by
/// harmonic: beta_k = alpha_k / (e^{2 pi i k theta} - 1), beta_0 = 0.
/// Throws SmallDivisorResonance naming the first harmonic whose divisor
/// modulus falls below divisor_floor.
CohomologySolution solve_cohomological(const TrigPoly& alpha, double theta,
                                       double divisor_floor = 1e-8,
                                       int residual_grid = 1024);

} // namespace kamforge

#endif
