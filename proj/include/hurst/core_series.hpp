#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hurst/time_series.hpp"

namespace hurst {

/// Tolerance used for "exact" floating-point assertions across the library.
inline constexpr double kNumericEpsilon = 1e-9;

struct StructureFunctionTable {
    std::vector<std::size_t> lags;
    std::vector<int> orders;
    /// moments[i][j] = S_{orders[i]}(lags[j]) = mean of (dx_lag)^order.
    std::vector<std::vector<double>> moments;

    [[nodiscard]] std::span<const double> row(int order) const;
};

struct AutocovarianceSequence {
    std::vector<std::size_t> lags;
    std::vector<double> values;
    bool normalized = false;
    double mean_used = 0.0;
};

/// x[i + lag] - x[i]; throws InvalidLag when lag == 0 or lag >= x.size().
[[nodiscard]] IncrementSeries make_increments(const TimeSeries& x, std::size_t lag);

/// Signed sample moments of the increments for every (order, lag) pair.
[[nodiscard]] StructureFunctionTable structure_function(const TimeSeries& x,
                                                        std::span<const std::size_t> lags,
                                                        std::span<const int> orders);

/// Biased (divisor N) autocovariance about the full-sample mean, lags 0..max_lag.
/// Requires max_lag < size / 2.
[[nodiscard]] AutocovarianceSequence autocovariance(const IncrementSeries& inc,
                                                    std::size_t max_lag, bool normalize);

}  // namespace hurst
