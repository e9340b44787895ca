#ifndef KAMFORGE_DIOPHANTINE_HPP
#define KAMFORGE_DIOPHANTINE_HPP

#include <cstdint>
#include <vector>

namespace kamforge {

struct Convergent {
    long long p = 0;
    long long q = 1;
    double error = 0.0;    // theta - p/q
    double quality = 0.0;  // q^{1+tau} * |q theta - p|
};

/// Certificate that |theta - p/q| >= c / q^{2+tau} for all q <= qmax.
/// The minimum of q^{1+tau} |q theta - p| over q <= qmax is attained at
/// convergent denominators, so c is computed from the convergent list.
struct DiophantineCert {
    double theta = 0.0;
    double tau = 0.0;
    double c = 0.0;
    long long qmax = 0;
    std::vector<Convergent> convergents;
};

/// Continued-fraction certificate; throws RationalDetected when theta is
/// rational at working precision (certified c would fall below 1e-9).
DiophantineCert diophantine_certificate(double theta, double tau, long long qmax);

/// Exhaustive soundness scan: smallest q^{1+tau} ||q theta|| over q <= qmax
/// and the number of violations of the certified bound.
struct CertScan {
    double min_quality = 0.0;
    long long violations = 0;
};
CertScan scan_certificate(const DiophantineCert& cert);

/// Convergent denominators of theta up to qmax (continued fractions).
std::vector<Convergent> continued_fraction_convergents(double theta, long long qmax);

inline double golden_mean() { return 0.61803398874989484820; }

} // namespace kamforge

#endif
