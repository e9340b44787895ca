#include "kamforge/errors.hpp"

#include "kamforge/common.hpp"

namespace kamforge {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::IntegrationFailure: return "IntegrationFailure";
        case ErrorCode::InvarianceViolation: return "InvarianceViolation";
        case ErrorCode::NotLowestTerms: return "NotLowestTerms";
        case ErrorCode::InterpolationSingular: return "InterpolationSingular";
        case ErrorCode::NoTwist: return "NoTwist";
        case ErrorCode::NotResonantCircle: return "NotResonantCircle";
        case ErrorCode::EmptyAdmissibleRange: return "EmptyAdmissibleRange";
        case ErrorCode::RationalDetected: return "RationalDetected";
        case ErrorCode::SmallDivisorResonance: return "SmallDivisorResonance";
        case ErrorCode::NewtonDiverged: return "NewtonDiverged";
        case ErrorCode::TwistLost: return "TwistLost";
        case ErrorCode::ResonantEigenvalue: return "ResonantEigenvalue";
        case ErrorCode::NotPeriodic: return "NotPeriodic";
        case ErrorCode::NotDiffeo: return "NotDiffeo";
        case ErrorCode::NonConvergent: return "NonConvergent";
        case ErrorCode::GraphFolded: return "GraphFolded";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::BudgetTooSmall: return "BudgetTooSmall";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::CensusShortfall: return "CensusShortfall";
        case ErrorCode::CampaignHalted: return "CampaignHalted";
        case ErrorCode::PartitionOverflow: return "PartitionOverflow";
        case ErrorCode::MeanNotZero: return "MeanNotZero";
        case ErrorCode::JetUnsupported: return "JetUnsupported";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::SerializationError: return "SerializationError";
    }
    return "Unknown";
}

SmallDivisorResonance::SmallDivisorResonance(int harmonic, double divisor_modulus)
    : Error(ErrorCode::SmallDivisorResonance,
            "small divisor at harmonic k=" + std::to_string(harmonic) +
                " (|e^{2 pi i k theta} - 1| = " + fmt17(divisor_modulus) + ")"),
      harmonic_(harmonic),
      divisor_modulus_(divisor_modulus) {}

NewtonDiverged::NewtonDiverged(const std::string& what, std::vector<double> history)
    : Error(ErrorCode::NewtonDiverged, what), history_(std::move(history)) {}

CampaignHalted::CampaignHalted(int stage, const std::string& what)
    : Error(ErrorCode::CampaignHalted, "stage " + std::to_string(stage) + ": " + what),
      stage_(stage) {}

} // namespace kamforge
