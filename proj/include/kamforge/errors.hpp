#ifndef KAMFORGE_ERRORS_HPP
#define KAMFORGE_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace kamforge {

enum class ErrorCode {
    IntegrationFailure,
    InvarianceViolation,
    NotLowestTerms,
    InterpolationSingular,
    NoTwist,
    NotResonantCircle,
    EmptyAdmissibleRange,
    RationalDetected,
    SmallDivisorResonance,
    NewtonDiverged,
    TwistLost,
    ResonantEigenvalue,
    NotPeriodic,
    NotDiffeo,
    NonConvergent,
    GraphFolded,
    DomainError,
    BudgetTooSmall,
    BudgetExceeded,
    CensusShortfall,
    CampaignHalted,
    PartitionOverflow,
    MeanNotZero,
    JetUnsupported,
    ConfigError,
    SerializationError,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

/// Cohomological equation hit a resonant or near-resonant harmonic.
class SmallDivisorResonance : public Error {
public:
    SmallDivisorResonance(int harmonic, double divisor_modulus);
    int harmonic() const { return harmonic_; }
    double divisor_modulus() const { return divisor_modulus_; }

private:
    int harmonic_;
    double divisor_modulus_;
};

/// Quasi-Newton invariance solve failed; carries the residual history.
class NewtonDiverged : public Error {
public:
    NewtonDiverged(const std::string& what, std::vector<double> history);
    const std::vector<double>& residual_history() const { return history_; }

private:
    std::vector<double> history_;
};

/// Cascade stopped at a stage; earlier stages remain in the partial ledger.
class CampaignHalted : public Error {
public:
    CampaignHalted(int stage, const std::string& what);
    int stage() const { return stage_; }

private:
    int stage_;
};

} // namespace kamforge

#endif
