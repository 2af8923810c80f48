#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sngs {

enum class ErrorCode {
    NonPositiveRadius,
    TooFewNodes,
    FactorizationFailure,
    TooManyRequested,
    EigenNonConvergence,
    InvalidExponent,
    InvalidParams,
    NonConvergence,
    TrivialCollapse,
    NegativeStateDetected,
    ContinuationStuck,
    UnsortedInput,
    WrongParams,
    GridMismatch,
    MixedExponents,
    WrongConvention,
    UnconvergedState,
    ParityMismatch,
    UsageError,
    BadRange,
    IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Six significant digits, for error messages.
std::string format_number(double x);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace sngs
