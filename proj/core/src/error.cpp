#include "sngs/error.hpp"

#include <cstdio>

namespace sngs {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonPositiveRadius: return "NonPositiveRadius";
        case ErrorCode::TooFewNodes: return "TooFewNodes";
        case ErrorCode::FactorizationFailure: return "FactorizationFailure";
        case ErrorCode::TooManyRequested: return "TooManyRequested";
        case ErrorCode::EigenNonConvergence: return "EigenNonConvergence";
        case ErrorCode::InvalidExponent: return "InvalidExponent";
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::NonConvergence: return "NonConvergence";
        case ErrorCode::TrivialCollapse: return "TrivialCollapse";
        case ErrorCode::NegativeStateDetected: return "NegativeStateDetected";
        case ErrorCode::ContinuationStuck: return "ContinuationStuck";
        case ErrorCode::UnsortedInput: return "UnsortedInput";
        case ErrorCode::WrongParams: return "WrongParams";
        case ErrorCode::GridMismatch: return "GridMismatch";
        case ErrorCode::MixedExponents: return "MixedExponents";
        case ErrorCode::WrongConvention: return "WrongConvention";
        case ErrorCode::UnconvergedState: return "UnconvergedState";
        case ErrorCode::ParityMismatch: return "ParityMismatch";
        case ErrorCode::UsageError: return "UsageError";
        case ErrorCode::BadRange: return "BadRange";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace sngs
