#include "hurst/core_series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hurst/error.hpp"

namespace hurst {

TimeSeries::TimeSeries(std::vector<double> values, Timestamp start_time, Duration sample_interval,
                       std::string label)
    : values_(std::move(values)),
      start_time_(start_time),
      sample_interval_(sample_interval),
      label_(std::move(label)) {
    if (values_.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "a time series needs at least 2 samples");
    }
    if (sample_interval_.count() <= 0) {
        throw Error(ErrorCode::InvalidArgument, "sample interval must be positive");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::InvalidArgument, "time series values must be finite");
        }
    }
}

std::span<const double> StructureFunctionTable::row(int order) const {
    auto it = std::find(orders.begin(), orders.end(), order);
    if (it == orders.end()) {
        throw Error(ErrorCode::InvalidArgument,
                    "order " + std::to_string(order) + " not in structure function table");
    }
    return moments[static_cast<std::size_t>(it - orders.begin())];
}

IncrementSeries make_increments(const TimeSeries& x, std::size_t lag) {
    if (lag == 0) {
        throw Error(ErrorCode::InvalidLag, "lag must be at least 1");
    }
    if (lag >= x.size()) {
        throw Error(ErrorCode::InvalidLag, "lag " + std::to_string(lag) +
                                               " must be shorter than the series (" +
                                               std::to_string(x.size()) + ")");
    }
    const auto v = x.values();
    IncrementSeries inc;
    inc.lag = lag;
    inc.parent_label = x.label();
    inc.sample_interval = x.sample_interval();
    inc.values.resize(v.size() - lag);
    for (std::size_t i = 0; i + lag < v.size(); ++i) {
        inc.values[i] = v[i + lag] - v[i];
    }
    return inc;
}

StructureFunctionTable structure_function(const TimeSeries& x, std::span<const std::size_t> lags,
                                          std::span<const int> orders) {
    if (lags.empty() || orders.empty()) {
        throw Error(ErrorCode::InvalidArgument, "structure function needs lags and orders");
    }
    for (int n : orders) {
        if (n < 1) {
            throw Error(ErrorCode::InvalidArgument, "structure function orders must be >= 1");
        }
    }

    StructureFunctionTable table;
    table.lags.assign(lags.begin(), lags.end());
    table.orders.assign(orders.begin(), orders.end());
    table.moments.assign(orders.size(), std::vector<double>(lags.size(), 0.0));

    for (std::size_t j = 0; j < lags.size(); ++j) {
        const IncrementSeries inc = make_increments(x, lags[j]);
        const double count = static_cast<double>(inc.size());
        for (std::size_t i = 0; i < orders.size(); ++i) {
            double sum = 0.0;
            for (double d : inc.values) {
                double p = 1.0;
                for (int k = 0; k < orders[i]; ++k) p *= d;
                sum += p;
            }
            table.moments[i][j] = sum / count;
        }
    }
    return table;
}

AutocovarianceSequence autocovariance(const IncrementSeries& inc, std::size_t max_lag,
                                      bool normalize) {
    const std::size_t n = inc.size();
    if (n < 2 || max_lag == 0 || 2 * max_lag >= n) {
        throw Error(ErrorCode::InvalidArgument,
                    "max_lag " + std::to_string(max_lag) + " must be in [1, " +
                        std::to_string(n / 2) + ") for " + std::to_string(n) + " increments");
    }
    const auto& v = inc.values;
    const double mu = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);

    std::vector<double> centred(n);
    std::transform(v.begin(), v.end(), centred.begin(), [mu](double d) { return d - mu; });

    AutocovarianceSequence out;
    out.mean_used = mu;
    out.normalized = normalize;
    out.lags.resize(max_lag + 1);
    out.values.resize(max_lag + 1);
    for (std::size_t k = 0; k <= max_lag; ++k) {
        double sum = 0.0;
        for (std::size_t t = 0; t + k < n; ++t) sum += centred[t] * centred[t + k];
        out.lags[k] = k;
        out.values[k] = sum / static_cast<double>(n);
    }

    if (normalize) {
        const double c0 = out.values[0];
        if (!(c0 > 0.0)) {
            throw Error(ErrorCode::DegenerateSeries,
                        "zero increment variance; cannot normalise autocovariance");
        }
        out.values[0] = 1.0;
        for (std::size_t k = 1; k <= max_lag; ++k) out.values[k] /= c0;
    }
    return out;
}

}  // namespace hurst
