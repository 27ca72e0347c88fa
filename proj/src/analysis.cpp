#include "hurst/analysis.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "hurst/error.hpp"

namespace hurst {

namespace {

using nlohmann::json;

constexpr const char* kToolVersion = "0.1.0";

[[noreturn]] void config_error(const std::string& what) {
    throw Error(ErrorCode::InvalidConfig, what);
}

const json& require(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) {
        config_error(where + ": missing mandatory key '" + key + "'");
    }
    return obj.at(key);
}

template <typename T>
T value_or(const json& obj, const char* key, T fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        config_error(where + "." + key + ": " + e.what());
    }
}

char single_char(const json& obj, const char* key, char fallback, const std::string& where) {
    const auto s = value_or<std::string>(obj, key, std::string(1, fallback), where);
    if (s.size() != 1) config_error(where + "." + key + " must be a single character");
    return s[0];
}

CsvSource parse_csv_source(const json& src, const std::filesystem::path& base_dir,
                           const std::string& where) {
    CsvSource csv;
    csv.path = require(src, "path", where).get<std::string>();
    if (csv.path.is_relative() && !base_dir.empty()) csv.path = base_dir / csv.path;
    IngestSchema& schema = csv.schema;
    schema.timestamp_column = value_or<std::string>(src, "timestamp_column", "timestamp", where);
    schema.price_column = value_or<std::string>(src, "price_column", "price", where);
    const auto format = value_or<std::string>(src, "timestamp_format", "iso8601", where);
    if (format == "iso8601") schema.timestamp_format = TimestampFormat::Iso8601;
    else if (format == "epoch_seconds") schema.timestamp_format = TimestampFormat::EpochSeconds;
    else config_error(where + ".timestamp_format must be iso8601 or epoch_seconds");
    schema.decimal_separator = single_char(src, "decimal_separator", '.', where);
    schema.delimiter = single_char(src, "delimiter", ',', where);
    const auto dst = value_or<std::string>(src, "dst_rule", "eu", where);
    if (dst == "eu") schema.dst_rule = DstRule::Eu;
    else if (dst == "none") schema.dst_rule = DstRule::None;
    else config_error(where + ".dst_rule must be eu or none");
    schema.sample_interval = parse_duration(require(src, "sample_interval", where).get<std::string>());
    csv.gap_policy.max_fill = value_or<std::size_t>(src, "max_fill", 4, where);
    validate(schema);
    return csv;
}

GeneratorSpec parse_generator(const json& src, const std::string& where) {
    GeneratorSpec spec;
    try {
        spec.kind = parse_generator_kind(require(src, "kind", where).get<std::string>());
    } catch (const Error& e) {
        config_error(where + ": " + e.what());
    }
    spec.hurst = value_or<double>(src, "hurst", 0.5, where);
    spec.length = require(src, "length", where).get<std::size_t>();
    spec.seed = require(src, "seed", where).get<std::uint64_t>();
    spec.sigma = value_or<double>(src, "sigma", 1.0, where);
    spec.ou_rate = value_or<double>(src, "ou_rate", 0.1, where);
    spec.ou_level = value_or<double>(src, "ou_level", 0.0, where);
    spec.period = value_or<std::size_t>(src, "period", 1, where);
    spec.contamination = value_or<double>(src, "contamination", 0.0, where);
    spec.sample_interval = parse_duration(value_or<std::string>(src, "sample_interval", "1h", where));
    if (src.contains("start")) spec.start_time = parse_iso8601(src.at("start").get<std::string>());
    try {
        validate(spec);
    } catch (const Error& e) {
        config_error(where + ": " + e.what());
    }
    return spec;
}

std::string number_text(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return {buf.data(), static_cast<std::size_t>(ptr - buf.data())};
}

ScaleBand resolve_band(const BandSpec& spec, Duration interval) {
    ScaleBand band;
    if (spec.name == "hourly" || spec.name == "daily") {
        band = named_band(spec.name, interval);
    } else {
        band.name = spec.name;
        band.detrend_order = 1;
    }
    if (spec.tau_lo) band.tau_lo = *spec.tau_lo;
    if (spec.tau_hi) band.tau_hi = *spec.tau_hi;
    if (spec.detrend_order) band.detrend_order = *spec.detrend_order;
    if (band.tau_lo == 0 || band.tau_hi <= band.tau_lo) {
        config_error("band '" + band.name + "' needs 0 < tau_min < tau_max");
    }
    if (band.tau_lo < static_cast<std::size_t>(band.detrend_order) + 2) {
        config_error("band '" + band.name + "' starts below detrend order + 2");
    }
    return band;
}

json box_json(const HurstDistribution& d) {
    const BoxSummary& b = d.summary;
    return {{"mean", b.mean},         {"std", b.std_dev},       {"median", b.median},
            {"q1", b.q1},             {"q3", b.q3},             {"whisker_low", b.whisker_low},
            {"whisker_high", b.whisker_high}, {"outliers", b.outliers},
            {"windows", d.estimates.size()}};
}

json ingest_json(const IngestReport& r) {
    json gaps = json::array();
    for (const auto& g : r.gaps) {
        gaps.push_back({{"first_missing", format_timestamp(g.first_missing)},
                        {"missing", g.missing},
                        {"method", g.method},
                        {"dst", g.dst}});
    }
    json dups = json::array();
    for (const auto& d : r.duplicates) {
        dups.push_back({{"timestamp", format_timestamp(d.timestamp)},
                        {"rows", d.rows},
                        {"resolved_value", d.resolved_value},
                        {"dst", d.dst}});
    }
    return {{"rows_read", r.rows_read},
            {"gaps", gaps},
            {"duplicates", dups},
            {"dst_rows_affected", r.dst_rows_affected},
            {"length", r.length}};
}

json series_json(const SeriesResult& s, bool km_from_profile) {
    json bands = json::array();
    for (const auto& b : s.bands) {
        bands.push_back({{"name", b.band.name},
                         {"tau_min", b.band.tau_lo},
                         {"tau_max", b.band.tau_hi},
                         {"detrend_order", b.band.detrend_order},
                         {"snippet_sizes", b.surface.snippet_sizes},
                         {"mfdfa", box_json(b.distribution)},
                         {"h_km", b.h_km ? json(*b.h_km) : json(nullptr)},
                         {"discrepancy", b.discrepancy}});
    }
    const auto& km = s.km;
    json out = {
        {"label", s.label},
        {"length", s.length},
        {"sample_interval", format_duration(s.sample_interval)},
        {"sample_interval_seconds", s.sample_interval.count()},
        {"start_time", format_timestamp(s.start_time)},
        {"seed", s.seed ? json(*s.seed) : json(nullptr)},
        {"ingest", s.ingest ? ingest_json(*s.ingest) : json(nullptr)},
        {"autocovariance",
         {{"increment_lag", 1},
          {"normalized", s.autocovariance.normalized},
          {"mean", s.autocovariance.mean_used},
          {"lag1", s.autocovariance.values.size() > 1 ? s.autocovariance.values[1] : 0.0},
          {"values", s.autocovariance.values}}},
        {"bands", bands},
        {"km",
         {{"hurst", km.hurst},
          {"b", km.b},
          {"raw_b", km.diffusion.raw_b},
          {"diffusion_offset", km.diffusion.offset},
          {"lag", s.km_field.lag},
          {"reference_lag", s.km_field.reference_lag},
          {"bandwidth", s.km_field.bandwidth},
          {"drift_slope", km.drift.slope},
          {"drift_intercept", km.drift.intercept},
          {"multiplier", km.drift.multiplier},
          {"clamped", km.drift.clamped},
          {"usable_bins", km.drift.usable_bins},
          {"input", km_from_profile ? "profile" : "series"}}},
    };
    return out;
}

const BandResult* find_band(const SeriesResult& s, const std::string& name) {
    for (const auto& b : s.bands) {
        if (b.band.name == name) return &b;
    }
    return nullptr;
}

std::string tsv_number(std::optional<double> v) { return v ? number_text(*v) : "NA"; }

}  // namespace

AnalysisConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
    if (!doc.is_object()) config_error("config must be a JSON object");
    AnalysisConfig config;
    try {
        config.output_dir = require(doc, "output_dir", "config").get<std::string>();
        if (config.output_dir.is_relative() && !base_dir.empty()) {
            config.output_dir = base_dir / config.output_dir;
        }

        const json& ac = require(doc, "autocovariance", "config");
        config.autocovariance_max_lag = require(ac, "max_lag", "autocovariance").get<std::size_t>();

        const json& mf = require(doc, "mfdfa", "config");
        config.mfdfa.q_orders = value_or(mf, "q_orders", config.mfdfa.q_orders, "mfdfa");
        config.mfdfa.bidirectional = value_or(mf, "bidirectional", true, "mfdfa");
        config.mfdfa.min_window_points = value_or<std::size_t>(mf, "min_window_points", 3, "mfdfa");
        config.mfdfa.grid_points = value_or<std::size_t>(mf, "grid_points", 24, "mfdfa");

        const json& km = require(doc, "km", "config");
        config.km.lags = value_or(km, "lags", config.km.lags, "km");
        if (km.contains("bandwidth")) {
            const json& bw = km.at("bandwidth");
            if (bw.is_string()) {
                if (bw.get<std::string>() != "auto") config_error("km.bandwidth must be a number or \"auto\"");
            } else {
                config.km.bandwidth = bw.get<double>();
            }
        }
        config.km.grid_size = value_or<std::size_t>(km, "grid_size", 101, "km");
        config.km.min_occupancy = value_or<double>(km, "min_occupancy", 50.0, "km");
        const auto input = value_or<std::string>(km, "input", "profile", "km");
        if (input != "profile" && input != "series") config_error("km.input must be profile or series");
        config.km.use_profile = input == "profile";

        const json& series = require(doc, "series", "config");
        if (!series.is_array()) config_error("config.series must be an array");
        for (std::size_t i = 0; i < series.size(); ++i) {
            const std::string where = "series[" + std::to_string(i) + "]";
            const json& s = series[i];
            SeriesConfig sc;
            sc.label = require(s, "label", where).get<std::string>();
            const json& src = require(s, "source", where);
            const auto type = require(src, "type", where + ".source").get<std::string>();
            if (type == "csv") {
                CsvSource csv = parse_csv_source(src, base_dir, where + ".source");
                csv.schema.label = sc.label;
                sc.source = std::move(csv);
            } else if (type == "generator") {
                GeneratorSpec spec = parse_generator(src, where + ".source");
                spec.label = sc.label;
                sc.source = spec;
            } else {
                config_error(where + ".source.type must be csv or generator");
            }
            const json& bands = require(s, "bands", where);
            if (!bands.is_array()) config_error(where + ".bands must be an array");
            for (const json& b : bands) {
                BandSpec band;
                band.name = require(b, "name", where + ".bands").get<std::string>();
                if (b.contains("tau_min")) band.tau_lo = b.at("tau_min").get<std::size_t>();
                if (b.contains("tau_max")) band.tau_hi = b.at("tau_max").get<std::size_t>();
                if (b.contains("detrend_order")) band.detrend_order = b.at("detrend_order").get<int>();
                sc.bands.push_back(band);
            }
            config.series.push_back(std::move(sc));
        }
    } catch (const json::exception& e) {
        config_error(std::string("malformed config: ") + e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidConfig) throw;
        config_error(e.what());
    }
    validate(config);
    return config;
}

AnalysisConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open config '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        config_error("config '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return parse_config(doc, path.parent_path());
}

void validate(const AnalysisConfig& config) {
    if (config.series.empty()) config_error("config lists no series");
    if (config.output_dir.empty()) config_error("output_dir must not be empty");
    if (config.autocovariance_max_lag == 0) config_error("autocovariance.max_lag must be >= 1");
    if (config.mfdfa.min_window_points < 3) config_error("mfdfa.min_window_points must be >= 3");
    if (config.mfdfa.grid_points < 4) config_error("mfdfa.grid_points must be >= 4");
    if (config.mfdfa.q_orders.empty()) config_error("mfdfa.q_orders must not be empty");
    if (config.km.lags.size() < 2) config_error("km.lags needs at least two lags");
    if (std::find(config.km.lags.begin(), config.km.lags.end(), 1) == config.km.lags.end()) {
        config_error("km.lags must include the smallest lag 1");
    }
    if (config.km.bandwidth && !(*config.km.bandwidth > 0.0)) config_error("km.bandwidth must be positive");
    if (config.km.grid_size < 11 || config.km.grid_size % 2 == 0) {
        config_error("km.grid_size must be odd and >= 11");
    }
    std::set<std::string> labels;
    for (const auto& s : config.series) {
        if (s.label.empty()) config_error("series label must not be empty");
        if (!labels.insert(slug(s.label)).second) {
            config_error("series label '" + s.label + "' is not unique");
        }
        if (s.bands.empty()) config_error("series '" + s.label + "' defines no bands");
        std::set<std::string> band_names;
        for (const auto& b : s.bands) {
            if (!band_names.insert(b.name).second) {
                config_error("series '" + s.label + "' repeats band '" + b.name + "'");
            }
            const bool named = b.name == "hourly" || b.name == "daily";
            if (!named && (!b.tau_lo || !b.tau_hi)) {
                config_error("custom band '" + b.name + "' needs tau_min and tau_max");
            }
            if (b.detrend_order && *b.detrend_order < 1) {
                config_error("band '" + b.name + "' detrend_order must be >= 1");
            }
        }
    }
}

TimeSeries load_source(const SeriesConfig& series, std::optional<IngestReport>* report) {
    if (const auto* csv = std::get_if<CsvSource>(&series.source)) {
        IngestResult r = load_csv(csv->path, csv->schema, csv->gap_policy);
        if (report != nullptr) *report = r.report;
        return std::move(r.series);
    }
    return generate(std::get<GeneratorSpec>(series.source));
}

SeriesResult analyze_series(const TimeSeries& x, const std::vector<BandSpec>& bands,
                            const AnalysisConfig& config) {
    SeriesResult result;
    result.label = x.label();
    result.length = x.size();
    result.sample_interval = x.sample_interval();
    result.start_time = x.start_time();

    const IncrementSeries inc = make_increments(x, 1);
    const std::size_t max_lag = std::min(config.autocovariance_max_lag, (inc.size() - 1) / 2);
    result.autocovariance = autocovariance(inc, max_lag, true);

    std::vector<double> q_orders = config.mfdfa.q_orders;
    if (std::none_of(q_orders.begin(), q_orders.end(), [](double q) { return q == 2.0; })) {
        q_orders.push_back(2.0);
    }
    for (const BandSpec& spec : bands) {
        BandResult br;
        br.band = resolve_band(spec, x.sample_interval());
        MfdfaConfig mc;
        mc.q_orders = q_orders;
        mc.detrend_order = br.band.detrend_order;
        mc.bidirectional = config.mfdfa.bidirectional;
        for (std::size_t tau : band_snippet_sizes(br.band.tau_lo, br.band.tau_hi, config.mfdfa.grid_points)) {
            if (tau <= x.size() / 4) mc.snippet_sizes.push_back(tau);
        }
        br.surface = mfdfa(x, mc);
        br.distribution = hurst_distribution(br.surface, br.band.tau_lo, br.band.tau_hi,
                                             config.mfdfa.min_window_points, br.band.name);
        result.bands.push_back(std::move(br));
    }

    const TimeSeries km_input = config.km.use_profile ? profile(x) : x;
    const IncrementEnsemble ensemble = build_ensemble(km_input, config.km.lags);
    KmOptions options;
    options.bandwidth = config.km.bandwidth;
    options.grid_size = config.km.grid_size;
    options.min_occupancy = config.km.min_occupancy;
    result.km_field = estimate_km(ensemble, options);
    result.km = fit_km(result.km_field);

    // KM only resolves the smallest lags, so it is attached to the lowest band only
    auto smallest = std::min_element(result.bands.begin(), result.bands.end(),
                                     [](const BandResult& a, const BandResult& b) {
                                         return a.band.tau_lo < b.band.tau_lo;
                                     });
    if (smallest != result.bands.end()) {
        smallest->h_km = result.km.hurst;
        smallest->discrepancy =
            std::abs(result.km.hurst - smallest->distribution.summary.mean) > kDiscrepancyThreshold;
    }
    return result;
}

AnalysisRun analyze(const AnalysisConfig& config) {
    AnalysisRun run;
    for (const SeriesConfig& sc : config.series) {
        std::optional<IngestReport> ingest;
        std::optional<TimeSeries> x;
        try {
            x = load_source(sc, &ingest);
        } catch (const std::exception& e) {
            run.failures.push_back({sc.label, "load", e.what()});
            continue;
        }
        try {
            SeriesResult r = analyze_series(*x, sc.bands, config);
            r.label = sc.label;
            r.ingest = ingest;
            if (const auto* g = std::get_if<GeneratorSpec>(&sc.source)) r.seed = g->seed;
            run.results.push_back(std::move(r));
        } catch (const std::exception& e) {
            run.failures.push_back({sc.label, "analysis", e.what()});
        }
    }
    return run;
}

json build_report(const AnalysisRun& run, const AnalysisConfig& config, const ReportOptions& options) {
    json series = json::array();
    json table = json::array();
    json seeds = json::array();
    for (const auto& s : run.results) {
        series.push_back(series_json(s, config.km.use_profile));
        json row = {{"series", s.label}};
        for (const char* name : {"hourly", "daily"}) {
            const BandResult* b = find_band(s, name);
            row[name] = b ? json{{"mean", b->distribution.summary.mean},
                                 {"std", b->distribution.summary.std_dev}}
                          : json(nullptr);
        }
        row["h_km"] = s.km.hurst;
        table.push_back(row);
    }
    for (const auto& sc : config.series) {
        if (const auto* g = std::get_if<GeneratorSpec>(&sc.source)) seeds.push_back(g->seed);
    }
    json failures = json::array();
    for (const auto& f : run.failures) {
        failures.push_back({{"label", f.label}, {"stage", f.stage}, {"error", f.error}});
    }
    json provenance = {{"tool", "hurstkit"},
                       {"version", kToolVersion},
                       {"config_hash", fnv1a_hex(options.config_text)},
                       {"seeds", seeds}};
    if (options.include_timestamp) {
        const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
        provenance["generated_at"] = format_timestamp(now);
    }
    return {{"schema", "hurst-report/1"},
            {"series", series},
            {"table", table},
            {"failures", failures},
            {"provenance", provenance}};
}

void emit_plotdata(const AnalysisRun& run, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw Error(ErrorCode::Io, "cannot create output directory '" + dir.string() + "'");
    }

    std::ostringstream table;
    table << "series\thourly_mean\thourly_std\tdaily_mean\tdaily_std\th_km\n";
    for (const auto& s : run.results) {
        const std::string name = slug(s.label);

        std::ostringstream ac;
        ac << "lag\tvalue\n";
        for (std::size_t k = 0; k < s.autocovariance.values.size(); ++k) {
            ac << s.autocovariance.lags[k] << '\t' << number_text(s.autocovariance.values[k]) << '\n';
        }
        write_file_atomic(dir / ("autocov_" + name + ".tsv"), ac.str());

        std::ostringstream box;
        box << "band\ttau_min\ttau_max\tdetrend_order\twhisker_low\tq1\tmedian\tq3\twhisker_high\tmean\tstd\twindows\n";
        for (const auto& b : s.bands) {
            const BoxSummary& bs = b.distribution.summary;
            box << b.band.name << '\t' << b.band.tau_lo << '\t' << b.band.tau_hi << '\t'
                << b.band.detrend_order << '\t' << number_text(bs.whisker_low) << '\t'
                << number_text(bs.q1) << '\t' << number_text(bs.median) << '\t' << number_text(bs.q3)
                << '\t' << number_text(bs.whisker_high) << '\t' << number_text(bs.mean) << '\t'
                << number_text(bs.std_dev) << '\t' << b.distribution.estimates.size() << '\n';

            std::ostringstream surf;
            surf << "q\ttau\tlog_tau\tF\tlog_F\n";
            for (std::size_t i = 0; i < b.surface.q_orders.size(); ++i) {
                for (std::size_t j = 0; j < b.surface.snippet_sizes.size(); ++j) {
                    const double tau = static_cast<double>(b.surface.snippet_sizes[j]);
                    const double f = b.surface.values[i][j];
                    surf << number_text(b.surface.q_orders[i]) << '\t' << b.surface.snippet_sizes[j] << '\t'
                         << number_text(std::log(tau)) << '\t' << number_text(f) << '\t'
                         << number_text(std::log(f)) << '\n';
                }
            }
            write_file_atomic(dir / ("surface_" + name + "_" + slug(b.band.name) + ".tsv"), surf.str());
        }
        write_file_atomic(dir / ("box_" + name + ".tsv"), box.str());

        std::ostringstream km;
        km << "dx\tD1\tD2\tcount\tusable\n";
        const auto& f = s.km_field;
        for (std::size_t i = 0; i < f.grid.size(); ++i) {
            km << number_text(f.grid[i]) << '\t' << (f.drift.empty() ? "NA" : number_text(f.drift[i])) << '\t'
               << (f.diffusion.empty() ? "NA" : number_text(f.diffusion[i])) << '\t' << number_text(f.weight[i])
               << '\t' << (f.usable[i] ? 1 : 0) << '\n';
        }
        write_file_atomic(dir / ("km_" + name + ".tsv"), km.str());

        const BandResult* hourly = find_band(s, "hourly");
        const BandResult* daily = find_band(s, "daily");
        const auto mean = [](const BandResult* b) {
            return b ? std::optional<double>(b->distribution.summary.mean) : std::nullopt;
        };
        const auto sd = [](const BandResult* b) {
            return b ? std::optional<double>(b->distribution.summary.std_dev) : std::nullopt;
        };
        table << s.label << '\t' << tsv_number(mean(hourly)) << '\t' << tsv_number(sd(hourly)) << '\t'
              << tsv_number(mean(daily)) << '\t' << tsv_number(sd(daily)) << '\t'
              << number_text(s.km.hurst) << '\n';
    }
    write_file_atomic(dir / "table.tsv", table.str());
}

int run_analysis(const AnalysisConfig& config, const std::filesystem::path& output_dir,
                 const ReportOptions& options) {
    const AnalysisRun run = analyze(config);
    emit_plotdata(run, output_dir);
    write_file_atomic(output_dir / "report.json", build_report(run, config, options).dump(2) + "\n");
    return run.exit_status();
}

std::string slug(const std::string& label) {
    std::string out;
    for (char c : label) {
        const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                          c == '-' || c == '_' || c == '.';
        out.push_back(keep ? c : '_');
    }
    return out;
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::array<char, 17> buf{};
    std::snprintf(buf.data(), buf.size(), "%016llx", static_cast<unsigned long long>(h));
    return buf.data();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::Io, "cannot write '" + tmp.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error(ErrorCode::Io, "write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot rename to '" + path.string() + "': " + ec.message());
}

}  // namespace hurst
