#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hurst/time_series.hpp"

namespace hurst {

enum class TimestampFormat { Iso8601, EpochSeconds };
enum class DstRule { None, Eu };

struct IngestSchema {
    std::string timestamp_column = "timestamp";
    TimestampFormat timestamp_format = TimestampFormat::Iso8601;
    std::string price_column = "price";
    char decimal_separator = '.';
    char delimiter = ',';
    /// Timestamps with an explicit offset are converted to UTC; naive ones are
    /// read as UTC wall-clock time.
    DstRule dst_rule = DstRule::Eu;
    Duration sample_interval{3600};
    std::string label;
};

/// Throws InvalidConfig when the schema is self-contradictory.
void validate(const IngestSchema& schema);

struct GapPolicy {
    /// Longest run of missing samples that may be linearly interpolated.
    std::size_t max_fill = 4;
};

struct GapEvent {
    Timestamp first_missing;
    std::size_t missing = 0;
    std::string method = "linear";
    bool dst = false;
};

struct DuplicateEvent {
    Timestamp timestamp;
    std::size_t rows = 0;
    double resolved_value = 0.0;
    bool dst = false;
};

struct IngestReport {
    std::size_t rows_read = 0;
    std::vector<GapEvent> gaps;
    std::vector<DuplicateEvent> duplicates;
    std::size_t dst_rows_affected = 0;
    std::size_t length = 0;
};

struct IngestResult {
    TimeSeries series;
    IngestReport report;
};

[[nodiscard]] IngestResult load_csv(const std::filesystem::path& path, const IngestSchema& schema,
                                    const GapPolicy& gap_policy = {});

/// Same as load_csv for an already opened stream; `source` names it in errors.
[[nodiscard]] IngestResult parse_csv(std::istream& in, const IngestSchema& schema,
                                     const GapPolicy& gap_policy = {},
                                     std::string_view source = "<stream>");

/// Samples with start <= t < end.
[[nodiscard]] TimeSeries slice_series(const TimeSeries& x, Timestamp start, Timestamp end);

/// `timestamp_utc,price` with ISO-8601 UTC stamps and shortest round-trip decimals.
void write_csv(const TimeSeries& x, std::ostream& out);
void write_csv(const TimeSeries& x, const std::filesystem::path& path);

/// Schema that reads back what write_csv produces.
[[nodiscard]] IngestSchema export_schema(Duration sample_interval);

[[nodiscard]] std::string format_timestamp(Timestamp t);
/// ISO-8601 date-time with optional seconds, fraction (must be zero) and offset.
[[nodiscard]] Timestamp parse_iso8601(std::string_view text);
/// "3600", "3600s", "15min", "1h", "30m" style durations.
[[nodiscard]] Duration parse_duration(std::string_view text);
[[nodiscard]] std::string format_duration(Duration d);

/// True when t (UTC) falls on an EU daylight-saving transition day
/// (last Sunday of March or October).
[[nodiscard]] bool on_eu_dst_transition_day(Timestamp t);

}  // namespace hurst
