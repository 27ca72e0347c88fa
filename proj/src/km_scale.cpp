#include "hurst/km_scale.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hurst/core_series.hpp"
#include "hurst/error.hpp"
#include "hurst/regression.hpp"

namespace hurst {

namespace {

struct Pair {
    double base;   // dx_tau
    double step;   // dx_s - dx_tau
};

double sample_sd(std::span<const double> v) {
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / (n - 1.0));
}

}  // namespace

const IncrementSeries& IncrementEnsemble::at_lag(std::size_t lag) const {
    for (std::size_t i = 0; i < lags.size(); ++i) {
        if (lags[i] == lag) return increments[i];
    }
    throw Error(ErrorCode::InvalidArgument, "lag " + std::to_string(lag) + " not in ensemble");
}

std::size_t KMCoefficientField::usable_count() const {
    return static_cast<std::size_t>(std::count(usable.begin(), usable.end(), true));
}

IncrementEnsemble build_ensemble(const TimeSeries& x, std::span<const std::size_t> lags) {
    std::vector<std::size_t> sorted(lags.begin(), lags.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.empty() || sorted.front() != 1) {
        throw Error(ErrorCode::InvalidConfig, "ensemble lags must include the smallest lag 1");
    }
    if (sorted.back() >= x.size() / 4) {
        throw Error(ErrorCode::InvalidConfig,
                    "largest lag " + std::to_string(sorted.back()) + " must be below length / 4 = " +
                        std::to_string(x.size() / 4));
    }
    IncrementEnsemble ens;
    ens.lags = sorted;
    ens.sample_interval = x.sample_interval();
    ens.parent_label = x.label();
    for (std::size_t lag : sorted) ens.increments.push_back(make_increments(x, lag));
    return ens;
}

KMCoefficientField estimate_km(const IncrementEnsemble& ensemble, const KmOptions& options) {
    if (ensemble.lags.size() < 2 || ensemble.lags.front() != 1) {
        throw Error(ErrorCode::InvalidConfig, "KM estimation needs lag 1 and one larger lag");
    }
    bool want_drift = false, want_diffusion = false;
    for (int m : options.orders) {
        if (m == 1) want_drift = true;
        else if (m == 2) want_diffusion = true;
        else throw Error(ErrorCode::InvalidConfig, "KM order must be 1 or 2");
    }
    if (!want_drift && !want_diffusion) {
        throw Error(ErrorCode::InvalidConfig, "no KM order requested");
    }
    if (options.grid_size < 11 || options.grid_size % 2 == 0) {
        throw Error(ErrorCode::InvalidConfig, "grid size must be odd and >= 11");
    }
    if (options.bandwidth && !(*options.bandwidth > 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "bandwidth must be positive");
    }

    const std::size_t tau = ensemble.lags[0];
    const std::size_t s = ensemble.lags[1];
    const auto& base = ensemble.increments[0].values;
    const auto& ref = ensemble.increments[1].values;

    const double sd = sample_sd(base);
    if (!(sd > 0.0)) {
        throw Error(ErrorCode::InsufficientData, "lag-1 increments have zero spread");
    }
    const double h = options.bandwidth.value_or(
        1.06 * sd * std::pow(static_cast<double>(base.size()), -0.2));

    // dx_tau(t) and dx_s(t) share the start index t, so dx_tau is nested in dx_s.
    std::vector<Pair> pairs(ref.size());
    for (std::size_t t = 0; t < ref.size(); ++t) pairs[t] = {base[t], ref[t] - base[t]};
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.base < b.base; });

    KMCoefficientField field;
    field.lag = tau;
    field.reference_lag = s;
    field.bandwidth = h;
    const std::size_t g = options.grid_size;
    field.grid.resize(g);
    const std::size_t mid = g / 2;
    const double spacing = 4.0 * sd / static_cast<double>(mid);
    for (std::size_t i = 0; i < g; ++i) {
        // built from the centre outwards so the grid is exactly symmetric
        const double offset = static_cast<double>(i > mid ? i - mid : mid - i) * spacing;
        field.grid[i] = i < mid ? -offset : offset;
    }
    field.weight.assign(g, 0.0);
    field.usable.assign(g, false);
    if (want_drift) {
        field.drift.assign(g, 0.0);
        field.drift_stderr.assign(g, 0.0);
    }
    if (want_diffusion) field.diffusion.assign(g, 0.0);

    const double step = static_cast<double>(s - tau);
    for (std::size_t i = 0; i < g; ++i) {
        const double centre = field.grid[i];
        auto lo = std::lower_bound(pairs.begin(), pairs.end(), centre - h,
                                   [](const Pair& p, double v) { return p.base < v; });
        auto hi = std::upper_bound(pairs.begin(), pairs.end(), centre + h,
                                   [](double v, const Pair& p) { return v < p.base; });
        double sw = 0.0, sw2 = 0.0, s1 = 0.0, s2 = 0.0;
        for (auto it = lo; it != hi; ++it) {
            const double u = (it->base - centre) / h;
            const double w = 0.75 * (1.0 - u * u);
            if (w <= 0.0) continue;
            sw += w;
            sw2 += w * w;
            s1 += w * it->step;
            s2 += w * it->step * it->step;
        }
        field.weight[i] = sw;
        field.usable[i] = sw >= options.min_occupancy;
        if (!(sw > 0.0)) continue;
        const double m1 = s1 / sw;
        const double m2 = s2 / sw;
        if (want_drift) {
            field.drift[i] = m1 / step;
            const double var = std::max(m2 - m1 * m1, 0.0);
            const double n_eff = sw * sw / sw2;
            field.drift_stderr[i] = std::sqrt(var / n_eff) / step;
        }
        if (want_diffusion) field.diffusion[i] = m2 / (2.0 * step);
    }

    if (field.usable_count() == 0) {
        throw Error(ErrorCode::InsufficientData,
                    "no grid point reaches the minimum kernel occupancy");
    }
    return field;
}

double nested_increment_multiplier(double hurst, std::size_t lag, std::size_t reference_lag) {
    // Cov(dx_tau, dx_s) / Var(dx_tau) with Var(dx_t) proportional to t^{2H}
    const double r = static_cast<double>(reference_lag) / static_cast<double>(lag);
    const double d = r - 1.0;
    const double e = 2.0 * hurst;
    return 0.5 * (std::pow(r, e) + 1.0 - std::pow(d, e));
}

DriftFit hurst_from_drift(const KMCoefficientField& field) {
    if (field.drift.empty()) {
        throw Error(ErrorCode::InvalidArgument, "field carries no drift estimate");
    }
    if (field.reference_lag <= field.lag) {
        throw Error(ErrorCode::InvalidArgument, "reference lag must exceed the base lag");
    }
    std::vector<double> x, y, w;
    bool negative = false, positive = false;
    for (std::size_t i = 0; i < field.grid.size(); ++i) {
        if (!field.usable[i]) continue;
        x.push_back(field.grid[i]);
        y.push_back(field.drift[i]);
        w.push_back(field.weight[i]);
        negative = negative || field.grid[i] < 0.0;
        positive = positive || field.grid[i] > 0.0;
    }
    if (!negative || !positive) {
        throw Error(ErrorCode::OneSidedSupport, "usable drift bins cover only one sign of dx");
    }
    if (x.size() < 5) {
        throw Error(ErrorCode::InsufficientData,
                    "drift fit needs 5 usable bins, have " + std::to_string(x.size()));
    }

    const LinearFit line = fit_line(x, y, w);
    DriftFit fit;
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    fit.residual_rms = line.residual_rms;
    fit.usable_bins = x.size();
    fit.multiplier = 1.0 + line.slope * static_cast<double>(field.reference_lag - field.lag);

    // the multiplier is strictly increasing in H on (0, 1)
    const double lo_m = nested_increment_multiplier(0.0, field.lag, field.reference_lag);
    const double hi_m = nested_increment_multiplier(1.0, field.lag, field.reference_lag);
    if (fit.multiplier <= lo_m) {
        fit.hurst = 0.0;
        fit.clamped = true;
    } else if (fit.multiplier >= hi_m) {
        fit.hurst = 1.0;
        fit.clamped = true;
    } else {
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
            const double midpoint = 0.5 * (lo + hi);
            if (nested_increment_multiplier(midpoint, field.lag, field.reference_lag) < fit.multiplier) {
                lo = midpoint;
            } else {
                hi = midpoint;
            }
        }
        fit.hurst = 0.5 * (lo + hi);
    }
    return fit;
}

DiffusionFit multifractal_b(const KMCoefficientField& field) {
    if (field.diffusion.empty()) {
        throw Error(ErrorCode::InvalidArgument, "field carries no diffusion estimate");
    }
    const double step = static_cast<double>(field.reference_lag - field.lag);
    const double tau = static_cast<double>(field.lag);
    std::vector<double> x, y;
    for (std::size_t i = 0; i < field.grid.size(); ++i) {
        if (!field.usable[i]) continue;
        double d2 = field.diffusion[i];
        if (!field.drift.empty()) d2 -= 0.5 * step * field.drift[i] * field.drift[i];
        x.push_back(field.grid[i] * field.grid[i] / tau);
        y.push_back(d2);
    }
    if (x.size() < 5) {
        throw Error(ErrorCode::InsufficientData,
                    "diffusion fit needs 5 usable bins, have " + std::to_string(x.size()));
    }
    const LinearFit line = fit_line(x, y);
    DiffusionFit fit;
    fit.raw_b = line.slope;
    fit.b = std::max(line.slope, 0.0);
    fit.offset = line.intercept;
    fit.residual_rms = line.residual_rms;
    fit.usable_bins = x.size();
    return fit;
}

KMHurstFit fit_km(const KMCoefficientField& field) {
    KMHurstFit fit;
    fit.lag = field.lag;
    fit.drift = hurst_from_drift(field);
    fit.diffusion = multifractal_b(field);
    fit.hurst = fit.drift.hurst;
    fit.b = fit.diffusion.b;
    return fit;
}

std::vector<double> xi_from_km(double hurst, double b, std::span<const int> orders) {
    if (b < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "b must be non-negative");
    }
    std::vector<double> xi;
    xi.reserve(orders.size());
    for (int n : orders) {
        const double nd = n;
        xi.push_back(nd * hurst - b * nd * (nd - 1.0));
    }
    return xi;
}

}  // namespace hurst
