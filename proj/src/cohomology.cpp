#include "kamforge/cohomology.hpp"

#include "kamforge/common.hpp"
#include "kamforge/errors.hpp"

#include <cmath>
#include <complex>

namespace kamforge {

CohomologySolution solve_cohomological(const TrigPoly& alpha, double theta,
                                       double divisor_floor, int residual_grid) {
    using cd = std::complex<double>;
    CohomologySolution sol;
    sol.alpha_bar = alpha.mean();
    std::vector<Harmonic> beta_h;
    beta_h.reserve(alpha.harmonics().size());
    for (const Harmonic& h : alpha.harmonics()) {
        // divisor e^{2 pi i k theta} - 1; |divisor| = 2 |sin(pi k theta)|
        const double ang = two_pi * wrap01(static_cast<double>(h.k) * theta);
        const cd divisor = cd(std::cos(ang) - 1.0, std::sin(ang));
        const double mod = std::abs(divisor);
        if (mod < divisor_floor) throw SmallDivisorResonance(h.k, mod);
        const cd ak(h.c / 2.0, -h.s / 2.0); // coefficient of e^{+2 pi i k x}
        const cd bk = ak / divisor;
        beta_h.push_back(Harmonic{h.k, 2.0 * bk.real(), -2.0 * bk.imag()});
    }
    sol.beta = TrigPoly(0.0, std::move(beta_h));
    for (int i = 0; i < residual_grid; ++i) {
        const double x = static_cast<double>(i) / residual_grid;
        const double lhs = sol.beta.eval(x + theta) - sol.beta.eval(x) + sol.alpha_bar;
        sol.residual = std::max(sol.residual, std::fabs(lhs - alpha.eval(x)));
    }
    return sol;
}

} // namespace kamforge
