#pragma once

#include <chrono>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hurst {

using Timestamp = std::chrono::sys_seconds;
using Duration = std::chrono::seconds;

/// Uniformly sampled scalar series. Gaps must be resolved before one of these
/// exists, so index i always sits at start_time + i * sample_interval.
class TimeSeries {
public:
    TimeSeries(std::vector<double> values, Timestamp start_time, Duration sample_interval,
               std::string label);

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }
    [[nodiscard]] Timestamp start_time() const noexcept { return start_time_; }
    [[nodiscard]] Duration sample_interval() const noexcept { return sample_interval_; }
    [[nodiscard]] const std::string& label() const noexcept { return label_; }

    [[nodiscard]] Timestamp time_at(std::size_t i) const noexcept {
        return start_time_ + static_cast<long long>(i) * sample_interval_;
    }
    /// One past the last sample, i.e. the exclusive end of the covered span.
    [[nodiscard]] Timestamp end_time() const noexcept { return time_at(values_.size()); }

private:
    std::vector<double> values_;
    Timestamp start_time_;
    Duration sample_interval_;
    std::string label_;
};

/// Increments x[i + lag] - x[i] of a parent series.
struct IncrementSeries {
    std::vector<double> values;
    std::size_t lag = 1;
    std::string parent_label;
    Duration sample_interval{0};

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
};

}  // namespace hurst
