#pragma once

#include <cstddef>
#include <span>

namespace hurst {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    /// Root-mean-square of the (unweighted) residuals.
    double residual_rms = 0.0;
    std::size_t points = 0;
};

/// Least-squares line y = intercept + slope * x. With non-empty weights the fit
/// is weighted; weights must be non-negative and match x in length.
[[nodiscard]] LinearFit fit_line(std::span<const double> x, std::span<const double> y,
                                 std::span<const double> weights = {});

/// OLS of log(y) on log(x); all inputs must be strictly positive.
[[nodiscard]] LinearFit fit_loglog(std::span<const double> x, std::span<const double> y);

}  // namespace hurst
