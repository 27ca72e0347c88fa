#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hurst/core_series.hpp"
#include "hurst/ingest.hpp"
#include "hurst/km_scale.hpp"
#include "hurst/mfdfa.hpp"
#include "hurst/synthgen.hpp"

namespace hurst {

/// |H_KM - mean H_MFDFA| above which a band is flagged as a method discrepancy.
inline constexpr double kDiscrepancyThreshold = 0.15;

struct CsvSource {
    std::filesystem::path path;
    IngestSchema schema;
    GapPolicy gap_policy;
};

struct BandSpec {
    /// "hourly" / "daily" resolve from the sampling interval; anything else
    /// needs explicit tau bounds.
    std::string name;
    std::optional<std::size_t> tau_lo;
    std::optional<std::size_t> tau_hi;
    std::optional<int> detrend_order;
};

struct SeriesConfig {
    std::string label;
    std::variant<CsvSource, GeneratorSpec> source;
    std::vector<BandSpec> bands;
};

struct MfdfaSettings {
    std::vector<double> q_orders{-4.0, -2.0, 0.0, 2.0, 4.0};
    bool bidirectional = true;
    std::size_t min_window_points = 3;
    /// Maximum snippet sizes per band.
    std::size_t grid_points = 24;
};

struct KmSettings {
    std::vector<std::size_t> lags{1, 2};
    std::optional<double> bandwidth;
    std::size_t grid_size = 101;
    double min_occupancy = 50.0;
    /// Build increments from the profile (cumulative sum) rather than the raw series.
    bool use_profile = true;
};

struct AnalysisConfig {
    std::vector<SeriesConfig> series;
    MfdfaSettings mfdfa;
    KmSettings km;
    std::size_t autocovariance_max_lag = 48;
    std::filesystem::path output_dir;
};

/// Throws InvalidConfig for missing keys, bad values or an empty series list.
/// Relative CSV paths are resolved against `base_dir`.
[[nodiscard]] AnalysisConfig parse_config(const nlohmann::json& doc,
                                          const std::filesystem::path& base_dir = {});
[[nodiscard]] AnalysisConfig load_config(const std::filesystem::path& path);
/// Checks that do not need the data (labels, band shapes, generator specs).
void validate(const AnalysisConfig& config);

struct BandResult {
    ScaleBand band;
    FluctuationSurface surface;
    HurstDistribution distribution;
    std::optional<double> h_km;
    bool discrepancy = false;
};

struct SeriesResult {
    std::string label;
    std::size_t length = 0;
    Duration sample_interval{0};
    Timestamp start_time{};
    std::optional<IngestReport> ingest;
    std::optional<std::uint64_t> seed;
    AutocovarianceSequence autocovariance;
    std::vector<BandResult> bands;
    KMCoefficientField km_field;
    KMHurstFit km;
};

struct SeriesFailure {
    std::string label;
    std::string stage;
    std::string error;
};

struct AnalysisRun {
    std::vector<SeriesResult> results;
    std::vector<SeriesFailure> failures;

    [[nodiscard]] int exit_status() const noexcept { return failures.empty() ? 0 : 1; }
};

/// Loads (or generates) a series source.
[[nodiscard]] TimeSeries load_source(const SeriesConfig& series, std::optional<IngestReport>* report = nullptr);

/// Every analysis step for one already loaded series.
[[nodiscard]] SeriesResult analyze_series(const TimeSeries& x, const std::vector<BandSpec>& bands,
                                          const AnalysisConfig& config);

/// Runs all series; failures are collected instead of propagated.
[[nodiscard]] AnalysisRun analyze(const AnalysisConfig& config);

struct ReportOptions {
    /// Emit provenance.generated_at; switch off for byte-stable output.
    bool include_timestamp = true;
    std::string config_text;
};

[[nodiscard]] nlohmann::json build_report(const AnalysisRun& run, const AnalysisConfig& config,
                                          const ReportOptions& options = {});

/// Writes autocov_*, box_*, surface_*, km_* and table.tsv into `dir`.
void emit_plotdata(const AnalysisRun& run, const std::filesystem::path& dir);

/// analyze + report.json + plot data, every file written via temp-then-rename.
/// Returns the exit status (0 ok, 1 some series failed).
int run_analysis(const AnalysisConfig& config, const std::filesystem::path& output_dir,
                 const ReportOptions& options = {});

/// File-name-safe form of a series or band label.
[[nodiscard]] std::string slug(const std::string& label);

/// 64-bit FNV-1a, rendered as 16 hex digits.
[[nodiscard]] std::string fnv1a_hex(std::string_view bytes);

void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace hurst
