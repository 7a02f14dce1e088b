#ifndef DDS_ERROR_HPP
#define DDS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dds {

enum class ErrorCode {
    DegenerateDeformation,
    PoleAtZ,
    BranchPoint,
    NonNormalizable,
    ZeroModeIntertwine,
    DegenerateExtension,
    PoleOnGrid,
    DegenerateDenominator,
    NoRealSolution,
    InconsistentMatch,
    OutOfLadder,
    OutOfDomain,
    OutOfRange,
    NonMonotone,
    ResidualTooLarge,
    SolverFailure,
    DifferentiationNoise,
    DegenerateR2,
    InvalidGrid,
    InvalidConfig,
};

inline const char* to_string(ErrorCode c) {
    switch (c) {
        case ErrorCode::DegenerateDeformation: return "DegenerateDeformation";
        case ErrorCode::PoleAtZ: return "PoleAtZ";
        case ErrorCode::BranchPoint: return "BranchPoint";
        case ErrorCode::NonNormalizable: return "NonNormalizable";
        case ErrorCode::ZeroModeIntertwine: return "ZeroModeIntertwine";
        case ErrorCode::DegenerateExtension: return "DegenerateExtension";
        case ErrorCode::PoleOnGrid: return "PoleOnGrid";
        case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
        case ErrorCode::NoRealSolution: return "NoRealSolution";
        case ErrorCode::InconsistentMatch: return "InconsistentMatch";
        case ErrorCode::OutOfLadder: return "OutOfLadder";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::NonMonotone: return "NonMonotone";
        case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
        case ErrorCode::SolverFailure: return "SolverFailure";
        case ErrorCode::DifferentiationNoise: return "DifferentiationNoise";
        case ErrorCode::DegenerateR2: return "DegenerateR2";
        case ErrorCode::InvalidGrid: return "InvalidGrid";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
    }
    return "UnknownError";
}

/// Library error carrying a machine-readable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace dds

#endif
