#include "kamforge/diophantine.hpp"

#include "kamforge/common.hpp"
#include "kamforge/errors.hpp"

#include <cmath>

namespace kamforge {

std::vector<Convergent> continued_fraction_convergents(double theta, long long qmax) {
    std::vector<Convergent> out;
    double x = theta;
    long long pm1 = 1, qm1 = 0; // p_{-1}, q_{-1}
    long long pm2 = 0, qm2 = 1; // p_{-2}, q_{-2}
    for (int iter = 0; iter < 64; ++iter) {
        const double fl = std::floor(x);
        if (fl > 9e17 || fl < -9e17) break;
        const long long a = static_cast<long long>(fl);
        const long long p = a * pm1 + pm2;
        const long long q = a * qm1 + qm2;
        if (q > qmax || q < 0 || p > (1LL << 62) || p < -(1LL << 62)) break;
        if (q > 0) {
            Convergent cv;
            cv.p = p;
            cv.q = q;
            cv.error = theta - static_cast<double>(p) / static_cast<double>(q);
            out.push_back(cv);
        }
        pm2 = pm1;
        qm2 = qm1;
        pm1 = p;
        qm1 = q;
        const double frac = x - fl;
        if (frac < 1e-15) break; // rational at working precision
        x = 1.0 / frac;
    }
    return out;
}

namespace {
// one-sided (from below) approximation defect: q theta - floor(q theta)
double floor_defect(double q, double theta) {
    const double qt = q * theta;
    return qt - std::floor(qt);
}
// two-sided defect: distance of q theta to the nearest integer
double nearest_defect(double q, double theta) {
    const double qt = q * theta;
    return std::fabs(qt - std::round(qt));
}
} // namespace

DiophantineCert diophantine_certificate(double theta, double tau, long long qmax) {
    if (tau < 0.0) throw Error(ErrorCode::DomainError, "tau must be >= 0");
    if (qmax < 2) throw Error(ErrorCode::DomainError, "qmax must be >= 2");
    DiophantineCert cert;
    cert.theta = theta;
    cert.tau = tau;
    cert.qmax = qmax;
    cert.convergents = continued_fraction_convergents(theta, qmax);
    if (cert.convergents.empty())
        throw Error(ErrorCode::RationalDetected, "theta has no convergents below qmax");

    // Rationality rejection uses the standard two-sided defect: for a
    // rational theta some q <= qmax annihilates ||q theta||.
    double c2 = 1e300;
    for (const Convergent& cv : cert.convergents) {
        const double q = static_cast<double>(cv.q);
        c2 = std::min(c2, std::pow(q, 1.0 + tau) * nearest_defect(q, theta));
    }
    if (!(c2 >= 1e-9))
        throw Error(ErrorCode::RationalDetected,
                    "theta is rational at working precision (two-sided c = " +
                        fmt17(c2) + ")");

    // The certified constant is the one-sided minimum over q <= qmax of
    // q^{1+tau} (q theta - floor(q theta)), i.e. theta - p/q >= c / q^{2+tau}
    // for approximations from below. The below-side convergents attain it
    // up to semiconvergents, so for moderate qmax the minimum is taken
    // exhaustively; beyond that the convergent minimum is used.
    double c = 1e300;
    if (qmax <= 200000) {
        for (long long q = 1; q <= qmax; ++q)
            c = std::min(c, std::pow(static_cast<double>(q), 1.0 + tau) *
                                floor_defect(static_cast<double>(q), theta));
    } else {
        c = floor_defect(1.0, theta);
        for (const Convergent& cv : cert.convergents) {
            const double q = static_cast<double>(cv.q);
            c = std::min(c, std::pow(q, 1.0 + tau) * floor_defect(q, theta));
        }
    }
    for (Convergent& cv : cert.convergents) {
        const double q = static_cast<double>(cv.q);
        cv.quality = std::pow(q, 1.0 + tau) * floor_defect(q, theta);
    }
    cert.c = c;
    if (!(cert.c >= 1e-9))
        throw Error(ErrorCode::RationalDetected,
                    "theta is rational at working precision (certified c = " +
                        fmt17(cert.c) + ")");
    return cert;
}

CertScan scan_certificate(const DiophantineCert& cert) {
    CertScan scan;
    scan.min_quality = 1e300;
    for (long long q = 1; q <= cert.qmax; ++q) {
        const double quality =
            std::pow(static_cast<double>(q), 1.0 + cert.tau) *
            floor_defect(static_cast<double>(q), cert.theta);
        scan.min_quality = std::min(scan.min_quality, quality);
        if (quality < cert.c * (1.0 - 1e-12)) ++scan.violations;
    }
    return scan;
}

} // namespace kamforge
