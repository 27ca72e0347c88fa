#include "hurst/error.hpp"

namespace hurst {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidLag: return "invalid-lag";
        case ErrorCode::InvalidArgument: return "invalid-argument";
        case ErrorCode::InvalidConfig: return "invalid-config";
        case ErrorCode::DegenerateSeries: return "degenerate-series";
        case ErrorCode::DegenerateVariance: return "degenerate-variance";
        case ErrorCode::InsufficientRange: return "insufficient-range";
        case ErrorCode::InsufficientData: return "insufficient-data";
        case ErrorCode::OneSidedSupport: return "one-sided-support";
        case ErrorCode::Synthesis: return "synthesis";
        case ErrorCode::Unsupported: return "unsupported";
        case ErrorCode::Parse: return "parse";
        case ErrorCode::UnfillableGap: return "unfillable-gap";
        case ErrorCode::Ordering: return "ordering";
        case ErrorCode::Range: return "range";
        case ErrorCode::Io: return "io";
    }
    return "unknown";
}

}  // namespace hurst
