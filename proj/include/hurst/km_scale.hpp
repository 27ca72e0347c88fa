#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hurst/time_series.hpp"

namespace hurst {

struct IncrementEnsemble {
    /// Sorted, unique, and always starting at 1.
    std::vector<std::size_t> lags;
    std::vector<IncrementSeries> increments;
    Duration sample_interval{0};
    std::string parent_label;

    [[nodiscard]] const IncrementSeries& at_lag(std::size_t lag) const;
};

/// Increment series of `x` for every lag. The lag set must contain 1 and its
/// largest lag must be below x.size() / 4.
[[nodiscard]] IncrementEnsemble build_ensemble(const TimeSeries& x, std::span<const std::size_t> lags);

struct KmOptions {
    /// Coefficient orders to estimate; each must be 1 or 2.
    std::vector<int> orders{1, 2};
    /// Kernel half-width in series units. Empty selects 1.06 * sd * N^(-1/5) of
    /// the lag-1 increments.
    std::optional<double> bandwidth;
    /// Odd so that 0 is a grid point; spans +-4 sd of the lag-1 increments.
    std::size_t grid_size = 101;
    /// Minimum summed kernel weight for a grid point to enter the fits.
    double min_occupancy = 50.0;
};

/// Nadaraya-Watson estimates (Epanechnikov kernel) of
///   D_m(dx, tau) = < (dx_s - dx_tau)^m | dx_tau = dx > / (m! (s - tau))
/// with tau = 1 and s the next lag of the ensemble. This is a forward step in
/// scale, so a persistent process has a positive drift slope.
struct KMCoefficientField {
    std::vector<double> grid;
    std::size_t lag = 1;
    std::size_t reference_lag = 2;
    double bandwidth = 0.0;
    /// Summed kernel weight per grid point.
    std::vector<double> weight;
    std::vector<bool> usable;
    /// Empty when the order was not requested.
    std::vector<double> drift;
    std::vector<double> diffusion;
    /// Standard error of the drift estimate per grid point (kernel-weighted).
    std::vector<double> drift_stderr;

    [[nodiscard]] std::size_t usable_count() const;
};

[[nodiscard]] KMCoefficientField estimate_km(const IncrementEnsemble& ensemble,
                                             const KmOptions& options = {});

struct DriftFit {
    double hurst = 0.5;
    /// WLS slope and intercept of D_1 against dx.
    double slope = 0.0;
    double intercept = 0.0;
    /// Conditional mean multiplier E[dx_s | dx_tau] / dx_tau = 1 + slope (s - tau).
    double multiplier = 1.0;
    double residual_rms = 0.0;
    std::size_t usable_bins = 0;
    /// Multiplier fell outside the range reachable for 0 < H < 1; H was clamped.
    bool clamped = false;
};

struct DiffusionFit {
    /// max(raw_b, 0).
    double b = 0.0;
    double raw_b = 0.0;
    /// Constant part of the conditional-variance diffusion; the monofractal level.
    double offset = 0.0;
    double residual_rms = 0.0;
    std::size_t usable_bins = 0;
};

struct KMHurstFit {
    double hurst = 0.5;
    double b = 0.0;
    std::size_t lag = 1;
    DriftFit drift;
    DiffusionFit diffusion;
};

/// Expected E[dx_s | dx_tau] / dx_tau for a self-similar process with
/// stationary increments and Hurst exponent H, with dx_tau nested in dx_s.
[[nodiscard]] double nested_increment_multiplier(double hurst, std::size_t lag,
                                                 std::size_t reference_lag);

/// Weighted (by kernel occupancy) fit of the drift, converted to H by inverting
/// nested_increment_multiplier. For s -> tau and H > 1/2 this reduces to
/// D_1 = H dx / tau.
[[nodiscard]] DriftFit hurst_from_drift(const KMCoefficientField& field);

/// Least squares of D_2 - (s - tau) D_1^2 / 2 against dx^2 / tau plus a constant.
/// The subtracted term is the finite-step drift contribution to the second
/// conditional moment and is skipped when the drift was not estimated.
[[nodiscard]] DiffusionFit multifractal_b(const KMCoefficientField& field);

[[nodiscard]] KMHurstFit fit_km(const KMCoefficientField& field);

/// xi(n) = n H - b n (n - 1).
[[nodiscard]] std::vector<double> xi_from_km(double hurst, double b, std::span<const int> orders);

}  // namespace hurst
