#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hurst {

enum class ErrorCode {
    InvalidLag,
    InvalidArgument,
    InvalidConfig,
    DegenerateSeries,
    DegenerateVariance,
    InsufficientRange,
    InsufficientData,
    OneSidedSupport,
    Synthesis,
    Unsupported,
    Parse,
    UnfillableGap,
    Ordering,
    Range,
    Io,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

/// All library failures are reported through this type; `code()` identifies
/// the failure class so callers (and the CLI report) can branch on it.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace hurst
