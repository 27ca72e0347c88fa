#include "hurst/mfdfa.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "hurst/error.hpp"
#include "hurst/regression.hpp"

namespace hurst {

namespace {

// Orthonormal polynomial basis (degree 0..m) over tau equally spaced points
// mapped to [-1, 1]. Column k is stored contiguously at basis[k * tau].
std::vector<double> orthonormal_basis(std::size_t tau, int degree) {
    const auto cols = static_cast<std::size_t>(degree) + 1;
    std::vector<double> basis(cols * tau);
    const double half = 0.5 * static_cast<double>(tau - 1);
    for (std::size_t k = 0; k < cols; ++k) {
        double* col = &basis[k * tau];
        for (std::size_t j = 0; j < tau; ++j) {
            const double t = (static_cast<double>(j) - half) / half;
            col[j] = std::pow(t, static_cast<double>(k));
        }
        // modified Gram-Schmidt, applied twice for orthogonality to working precision
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t p = 0; p < k; ++p) {
                const double* prev = &basis[p * tau];
                double dot = 0.0;
                for (std::size_t j = 0; j < tau; ++j) dot += prev[j] * col[j];
                for (std::size_t j = 0; j < tau; ++j) col[j] -= dot * prev[j];
            }
            double norm = 0.0;
            for (std::size_t j = 0; j < tau; ++j) norm += col[j] * col[j];
            norm = std::sqrt(norm);
            for (std::size_t j = 0; j < tau; ++j) col[j] /= norm;
        }
    }
    return basis;
}

double detrended_variance(std::span<const double> snippet, std::span<const double> basis,
                          std::size_t cols, std::vector<double>& residual) {
    const std::size_t tau = snippet.size();
    residual.assign(snippet.begin(), snippet.end());
    for (std::size_t k = 0; k < cols; ++k) {
        const double* col = &basis[k * tau];
        double dot = 0.0;
        for (std::size_t j = 0; j < tau; ++j) dot += col[j] * residual[j];
        for (std::size_t j = 0; j < tau; ++j) residual[j] -= dot * col[j];
    }
    double ss = 0.0;
    for (double r : residual) ss += r * r;
    return ss / static_cast<double>(tau);
}

std::size_t find_q(std::span<const double> q_orders, double q) {
    for (std::size_t i = 0; i < q_orders.size(); ++i) {
        if (std::abs(q_orders[i] - q) < 1e-12) return i;
    }
    throw Error(ErrorCode::InvalidArgument, "q = " + std::to_string(q) + " not in surface");
}

double quantile_sorted(std::span<const double> sorted, double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::vector<std::size_t> default_snippet_sizes(std::size_t length, int detrend_order,
                                               std::size_t count) {
    const std::size_t lo = std::max<std::size_t>(static_cast<std::size_t>(detrend_order) + 2, 4);
    const std::size_t hi = length / 4;
    if (hi <= lo) {
        throw Error(ErrorCode::InvalidConfig,
                    "series of length " + std::to_string(length) + " too short for MFDFA");
    }
    std::set<std::size_t> sizes;
    const double ratio = std::log(static_cast<double>(hi) / static_cast<double>(lo));
    for (std::size_t i = 0; i < count; ++i) {
        const double frac = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        const auto s = static_cast<std::size_t>(std::llround(static_cast<double>(lo) * std::exp(ratio * frac)));
        sizes.insert(std::clamp(s, lo, hi));
    }
    return {sizes.begin(), sizes.end()};
}

std::vector<std::size_t> band_snippet_sizes(std::size_t tau_lo, std::size_t tau_hi,
                                            std::size_t count) {
    if (tau_lo == 0 || tau_hi <= tau_lo) {
        throw Error(ErrorCode::InvalidConfig, "band must satisfy 0 < tau_lo < tau_hi");
    }
    std::vector<std::size_t> sizes;
    if (tau_hi - tau_lo + 1 <= count) {
        for (std::size_t s = tau_lo; s <= tau_hi; ++s) sizes.push_back(s);
        return sizes;
    }
    std::set<std::size_t> unique;
    const double ratio = std::log(static_cast<double>(tau_hi) / static_cast<double>(tau_lo));
    for (std::size_t i = 0; i < count; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(count - 1);
        unique.insert(static_cast<std::size_t>(
            std::llround(static_cast<double>(tau_lo) * std::exp(ratio * frac))));
    }
    return {unique.begin(), unique.end()};
}

void validate(const MfdfaConfig& config, std::size_t length) {
    if (config.detrend_order < 1) {
        throw Error(ErrorCode::InvalidConfig, "detrend order must be >= 1");
    }
    if (config.snippet_sizes.empty()) {
        throw Error(ErrorCode::InvalidConfig, "no snippet sizes configured");
    }
    if (config.q_orders.empty()) {
        throw Error(ErrorCode::InvalidConfig, "no q orders configured");
    }
    const auto min_size = static_cast<std::size_t>(config.detrend_order) + 2;
    if (config.snippet_sizes.front() < min_size) {
        throw Error(ErrorCode::InvalidConfig,
                    "smallest snippet size " + std::to_string(config.snippet_sizes.front()) +
                        " must be >= detrend order + 2 = " + std::to_string(min_size));
    }
    if (!std::is_sorted(config.snippet_sizes.begin(), config.snippet_sizes.end()) ||
        std::adjacent_find(config.snippet_sizes.begin(), config.snippet_sizes.end()) !=
            config.snippet_sizes.end()) {
        throw Error(ErrorCode::InvalidConfig, "snippet sizes must be strictly increasing");
    }
    if (config.snippet_sizes.back() > length / 4) {
        throw Error(ErrorCode::InvalidConfig,
                    "largest snippet size " + std::to_string(config.snippet_sizes.back()) +
                        " exceeds length / 4 = " + std::to_string(length / 4));
    }
}

std::span<const double> FluctuationSurface::row(double q) const {
    return values[find_q(q_orders, q)];
}

TimeSeries profile(const TimeSeries& x) {
    if (x.size() < 4) {
        throw Error(ErrorCode::InvalidArgument, "profile needs at least 4 samples");
    }
    const auto v = x.values();
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    std::vector<double> out(v.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        acc += v[i] - mean;
        out[i] = acc;
    }
    return TimeSeries(std::move(out), x.start_time(), x.sample_interval(), x.label());
}

std::vector<double> segment_variances(const TimeSeries& profile, std::size_t tau,
                                      int detrend_order, bool bidirectional) {
    if (detrend_order < 1) {
        throw Error(ErrorCode::InvalidConfig, "detrend order must be >= 1");
    }
    if (tau < static_cast<std::size_t>(detrend_order) + 2) {
        throw Error(ErrorCode::InvalidConfig,
                    "snippet size " + std::to_string(tau) + " too small for detrend order " +
                        std::to_string(detrend_order));
    }
    const auto p = profile.values();
    if (tau > p.size()) {
        throw Error(ErrorCode::InvalidConfig, "snippet size exceeds profile length");
    }

    const std::size_t n = p.size() / tau;
    const std::size_t tail = p.size() - n * tau;
    const auto cols = static_cast<std::size_t>(detrend_order) + 1;
    const std::vector<double> basis = orthonormal_basis(tau, detrend_order);

    std::vector<double> out;
    out.reserve(bidirectional && tail != 0 ? 2 * n : n);
    std::vector<double> residual;
    for (std::size_t k = 0; k < n; ++k) {
        out.push_back(detrended_variance(p.subspan(k * tau, tau), basis, cols, residual));
    }
    if (bidirectional && tail != 0) {
        for (std::size_t k = 0; k < n; ++k) {
            out.push_back(detrended_variance(p.subspan(tail + k * tau, tau), basis, cols, residual));
        }
    }
    return out;
}

FluctuationSurface fluctuation_function(std::span<const SnippetVariances> by_size,
                                        std::span<const double> q_orders, int detrend_order,
                                        std::string series_label) {
    if (by_size.empty() || q_orders.empty()) {
        throw Error(ErrorCode::InvalidArgument, "fluctuation function needs sizes and q orders");
    }
    FluctuationSurface surface;
    surface.q_orders.assign(q_orders.begin(), q_orders.end());
    surface.detrend_order = detrend_order;
    surface.series_label = std::move(series_label);
    surface.values.assign(q_orders.size(), std::vector<double>(by_size.size()));

    for (std::size_t j = 0; j < by_size.size(); ++j) {
        const auto& v = by_size[j].variances;
        if (v.empty()) {
            throw Error(ErrorCode::InvalidArgument, "snippet size " +
                                                        std::to_string(by_size[j].snippet_size) +
                                                        " has no variances");
        }
        surface.snippet_sizes.push_back(by_size[j].snippet_size);
        const bool has_zero = std::any_of(v.begin(), v.end(), [](double x) { return x <= 0.0; });
        if (std::any_of(v.begin(), v.end(), [](double x) { return x < 0.0 || !std::isfinite(x); })) {
            throw Error(ErrorCode::InvalidArgument, "snippet variances must be finite and >= 0");
        }
        const auto count = static_cast<double>(v.size());

        for (std::size_t i = 0; i < q_orders.size(); ++i) {
            const double q = q_orders[i];
            if (q <= 0.0 && has_zero) {
                throw Error(ErrorCode::DegenerateVariance,
                            "zero snippet variance at tau = " +
                                std::to_string(by_size[j].snippet_size) +
                                " with q <= 0 requested");
            }
            double f = 0.0;
            if (q == 0.0) {
                double s = 0.0;
                for (double x : v) s += std::log(x);
                f = std::exp(0.5 * s / count);
            } else {
                double s = 0.0;
                for (double x : v) s += std::pow(x, 0.5 * q);
                f = std::pow(s / count, 1.0 / q);
            }
            if (!(f > 0.0) || !std::isfinite(f)) {
                throw Error(ErrorCode::DegenerateVariance,
                            "fluctuation function not positive at tau = " +
                                std::to_string(by_size[j].snippet_size));
            }
            surface.values[i][j] = f;
        }
    }
    return surface;
}

FluctuationSurface mfdfa(const TimeSeries& x, const MfdfaConfig& config) {
    validate(config, x.size());
    const TimeSeries p = profile(x);
    std::vector<SnippetVariances> by_size;
    by_size.reserve(config.snippet_sizes.size());
    for (std::size_t tau : config.snippet_sizes) {
        by_size.push_back({tau, segment_variances(p, tau, config.detrend_order, config.bidirectional)});
    }
    return fluctuation_function(by_size, config.q_orders, config.detrend_order, x.label());
}

ScalingFit fit_scaling(const FluctuationSurface& surface, double q, std::size_t tau_min,
                       std::size_t tau_max) {
    const auto f = surface.row(q);
    std::vector<double> taus, values;
    for (std::size_t j = 0; j < surface.snippet_sizes.size(); ++j) {
        const std::size_t tau = surface.snippet_sizes[j];
        if (tau >= tau_min && tau <= tau_max) {
            taus.push_back(static_cast<double>(tau));
            values.push_back(f[j]);
        }
    }
    if (taus.size() < 3) {
        throw Error(ErrorCode::InsufficientRange,
                    "fit range [" + std::to_string(tau_min) + ", " + std::to_string(tau_max) +
                        "] holds " + std::to_string(taus.size()) + " grid points, need 3");
    }
    const LinearFit line = fit_loglog(taus, values);
    ScalingFit fit;
    fit.q = q;
    fit.tau_min = static_cast<std::size_t>(taus.front());
    fit.tau_max = static_cast<std::size_t>(taus.back());
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    fit.residual = line.residual_rms;
    return fit;
}

BoxSummary box_summary(std::span<const double> values) {
    if (values.empty()) {
        throw Error(ErrorCode::InsufficientData, "box summary of an empty sample");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    BoxSummary box;
    box.q1 = quantile_sorted(sorted, 0.25);
    box.median = quantile_sorted(sorted, 0.5);
    box.q3 = quantile_sorted(sorted, 0.75);
    const double iqr = box.q3 - box.q1;
    const double lo_fence = box.q1 - 1.5 * iqr;
    const double hi_fence = box.q3 + 1.5 * iqr;
    box.whisker_low = box.q1;
    box.whisker_high = box.q3;
    for (double v : sorted) {
        if (v < lo_fence || v > hi_fence) {
            box.outliers.push_back(v);
            continue;
        }
        box.whisker_low = std::min(box.whisker_low, v);
        box.whisker_high = std::max(box.whisker_high, v);
    }

    const auto n = static_cast<double>(sorted.size());
    box.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
    if (sorted.size() > 1) {
        double ss = 0.0;
        for (double v : sorted) ss += (v - box.mean) * (v - box.mean);
        box.std_dev = std::sqrt(ss / (n - 1.0));
    }
    return box;
}

HurstDistribution hurst_distribution(const FluctuationSurface& surface, std::size_t tau_lo,
                                     std::size_t tau_hi, std::size_t min_window_points,
                                     std::string band_name) {
    if (min_window_points < 3) {
        throw Error(ErrorCode::InvalidArgument, "min_window_points must be >= 3");
    }
    std::vector<std::size_t> in_band;
    for (std::size_t j = 0; j < surface.snippet_sizes.size(); ++j) {
        const std::size_t tau = surface.snippet_sizes[j];
        if (tau >= tau_lo && tau <= tau_hi) in_band.push_back(j);
    }
    if (in_band.size() < min_window_points + 1) {
        throw Error(ErrorCode::InsufficientRange,
                    "band [" + std::to_string(tau_lo) + ", " + std::to_string(tau_hi) + "] holds " +
                        std::to_string(in_band.size()) + " grid points, need " +
                        std::to_string(min_window_points + 1));
    }

    HurstDistribution dist;
    dist.scale_band = std::move(band_name);
    dist.tau_lo = tau_lo;
    dist.tau_hi = tau_hi;
    dist.detrend_order = surface.detrend_order;
    for (std::size_t a = 0; a < in_band.size(); ++a) {
        for (std::size_t b = a + min_window_points - 1; b < in_band.size(); ++b) {
            const ScalingFit fit = fit_scaling(surface, 2.0, surface.snippet_sizes[in_band[a]],
                                               surface.snippet_sizes[in_band[b]]);
            dist.estimates.push_back(fit.slope);
        }
    }
    dist.summary = box_summary(dist.estimates);
    return dist;
}

ScalingFit fit_structure_exponent(const StructureFunctionTable& table, int order,
                                  std::size_t tau_min, std::size_t tau_max) {
    const auto row = table.row(order);
    std::vector<double> taus, values;
    for (std::size_t j = 0; j < table.lags.size(); ++j) {
        if (table.lags[j] >= tau_min && table.lags[j] <= tau_max) {
            taus.push_back(static_cast<double>(table.lags[j]));
            values.push_back(row[j]);
        }
    }
    if (taus.size() < 3) {
        throw Error(ErrorCode::InsufficientRange, "structure function fit needs 3 lags in range");
    }
    const LinearFit line = fit_loglog(taus, values);
    ScalingFit fit;
    fit.q = order;
    fit.tau_min = static_cast<std::size_t>(taus.front());
    fit.tau_max = static_cast<std::size_t>(taus.back());
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    fit.residual = line.residual_rms;
    return fit;
}

ScaleBand named_band(const std::string& name, Duration sample_interval) {
    using namespace std::chrono_literals;
    const Duration hour = 1h;
    if (sample_interval.count() <= 0 || (12 * hour) % sample_interval != Duration{0}) {
        throw Error(ErrorCode::InvalidConfig, "sample interval must divide 12 h for named bands");
    }
    const auto per = [&](Duration d) { return static_cast<std::size_t>(d / sample_interval); };
    ScaleBand band;
    band.name = name;
    if (name == "hourly") {
        band.tau_lo = std::max<std::size_t>(3, sample_interval <= hour ? per(hour) : 0);
        band.tau_hi = per(12 * hour);
        band.detrend_order = 1;
    } else if (name == "daily") {
        band.tau_lo = per(12 * hour);
        band.tau_hi = per(48 * hour);
        band.detrend_order = 2;
    } else {
        throw Error(ErrorCode::InvalidConfig, "unknown named band '" + name + "'");
    }
    if (band.tau_hi <= band.tau_lo) {
        throw Error(ErrorCode::InvalidConfig,
                    "band '" + name + "' is empty at this sampling interval");
    }
    return band;
}

}  // namespace hurst
