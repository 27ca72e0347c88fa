#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hurst/core_series.hpp"
#include "hurst/time_series.hpp"

namespace hurst {

struct MfdfaConfig {
    std::vector<std::size_t> snippet_sizes;
    std::vector<double> q_orders{-4.0, -2.0, 0.0, 2.0, 4.0};
    int detrend_order = 1;
    /// Also segment from the tail when the length is not a multiple of tau.
    bool bidirectional = true;
};

/// Geometrically spaced integer snippet sizes from max(m + 2, 4) to length / 4.
/// Rounding can merge neighbours, so fewer than `count` sizes may come back.
[[nodiscard]] std::vector<std::size_t> default_snippet_sizes(std::size_t length, int detrend_order,
                                                             std::size_t count = 24);

/// Snippet sizes covering [tau_lo, tau_hi]: every integer when that is at most
/// `count` values, otherwise `count` geometrically spaced integers.
[[nodiscard]] std::vector<std::size_t> band_snippet_sizes(std::size_t tau_lo, std::size_t tau_hi,
                                                          std::size_t count = 24);

/// Throws InvalidConfig unless sizes are strictly increasing, >= m + 2 and <= length / 4.
void validate(const MfdfaConfig& config, std::size_t length);

struct SnippetVariances {
    std::size_t snippet_size = 0;
    std::vector<double> variances;
};

struct FluctuationSurface {
    std::vector<std::size_t> snippet_sizes;
    std::vector<double> q_orders;
    /// values[i][j] = F_{q_orders[i]}(snippet_sizes[j]).
    std::vector<std::vector<double>> values;
    int detrend_order = 1;
    std::string series_label;

    [[nodiscard]] std::span<const double> row(double q) const;
};

struct ScalingFit {
    double q = 2.0;
    std::size_t tau_min = 0;
    std::size_t tau_max = 0;
    /// Generalised Hurst exponent h(q) (or xi(n) for a structure function fit).
    double slope = 0.0;
    /// log amplitude; for structure functions this is log C_n.
    double intercept = 0.0;
    double residual = 0.0;
};

struct BoxSummary {
    double whisker_low = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double whisker_high = 0.0;
    double mean = 0.0;
    double std_dev = 0.0;
    std::vector<double> outliers;
};

/// Quartiles by linear interpolation between order statistics; whiskers are the
/// most extreme values within 1.5 IQR of the box; std is the sample (n - 1) one.
[[nodiscard]] BoxSummary box_summary(std::span<const double> values);

struct HurstDistribution {
    std::vector<double> estimates;
    BoxSummary summary;
    std::string scale_band;
    std::size_t tau_lo = 0;
    std::size_t tau_hi = 0;
    int detrend_order = 1;
};

/// Cumulative sum of the mean-removed series. Requires at least 4 samples.
[[nodiscard]] TimeSeries profile(const TimeSeries& x);

/// Mean squared residual after removing a degree-m least-squares polynomial from
/// each disjoint snippet of length tau.
[[nodiscard]] std::vector<double> segment_variances(const TimeSeries& profile, std::size_t tau,
                                                    int detrend_order, bool bidirectional);

/// Power means of the snippet variances: F_q = (mean v^{q/2})^{1/q},
/// F_0 = exp(mean(ln v) / 2).
[[nodiscard]] FluctuationSurface fluctuation_function(std::span<const SnippetVariances> by_size,
                                                      std::span<const double> q_orders,
                                                      int detrend_order = 1,
                                                      std::string series_label = {});

/// profile -> segment_variances -> fluctuation_function for every configured size.
[[nodiscard]] FluctuationSurface mfdfa(const TimeSeries& x, const MfdfaConfig& config);

/// Log-log OLS of F_q against tau over the grid points inside [tau_min, tau_max].
[[nodiscard]] ScalingFit fit_scaling(const FluctuationSurface& surface, double q,
                                     std::size_t tau_min, std::size_t tau_max);

/// h(2) for every contiguous run of at least `min_window_points` grid points
/// inside the band, summarised as a box-whisker distribution.
[[nodiscard]] HurstDistribution hurst_distribution(const FluctuationSurface& surface,
                                                   std::size_t tau_lo, std::size_t tau_hi,
                                                   std::size_t min_window_points = 3,
                                                   std::string band_name = "custom");

/// Power-law fit S_n(tau) = C_n tau^{xi(n)} over lags in [tau_min, tau_max].
/// The order must be even or its moments positive in the range.
[[nodiscard]] ScalingFit fit_structure_exponent(const StructureFunctionTable& table, int order,
                                                std::size_t tau_min, std::size_t tau_max);

struct ScaleBand {
    std::string name;
    std::size_t tau_lo = 0;
    std::size_t tau_hi = 0;
    int detrend_order = 1;
};

/// "hourly" (< 12 h, DFA1) or "daily" (12 h to 48 h, DFA2) expressed in samples
/// for the given sampling interval. The hourly band starts at max(3, 1 h).
[[nodiscard]] ScaleBand named_band(const std::string& name, Duration sample_interval);

}  // namespace hurst
