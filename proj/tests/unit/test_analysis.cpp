#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "hurst/analysis.hpp"
#include "hurst/error.hpp"

using namespace hurst;
using nlohmann::json;

namespace {

const std::filesystem::path kFixtures{HURSTKIT_FIXTURE_DIR};

json generator_series(const std::string& label, const std::string& kind, double h, std::size_t n,
                      std::uint64_t seed, const std::string& interval = "15min") {
    return {{"label", label},
            {"source",
             {{"type", "generator"},
              {"kind", kind},
              {"hurst", h},
              {"length", n},
              {"seed", seed},
              {"sample_interval", interval},
              {"contamination", kind == "jigsaw" ? 0.2 : 0.0}}},
            {"bands", json::array({{{"name", "hourly"}}, {{"name", "daily"}}})}};
}

json base_config(json series) {
    return {{"output_dir", "out"},
            {"autocovariance", {{"max_lag", 24}}},
            {"mfdfa", json::object()},
            {"km", json::object()},
            {"series", std::move(series)}};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("hurstkit_test_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

ErrorCode config_error(const json& doc) {
    try {
        (void)parse_config(doc);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected config error");
    return ErrorCode::Io;
}

}  // namespace

TEST_CASE("parse_config defaults and overrides") {
    json doc = base_config(json::array({generator_series("a", "fgn", 0.7, 4096, 1)}));
    doc["mfdfa"] = {{"q_orders", {-2, 2}}, {"grid_points", 12}};
    doc["km"] = {{"bandwidth", 0.3}, {"input", "series"}};
    const auto c = parse_config(doc, "/data");
    CHECK(c.output_dir == std::filesystem::path("/data/out"));
    CHECK(c.autocovariance_max_lag == 24);
    CHECK(c.mfdfa.q_orders == std::vector<double>{-2, 2});
    CHECK(c.mfdfa.grid_points == 12);
    CHECK(c.mfdfa.min_window_points == 3);
    CHECK(c.km.bandwidth == 0.3);
    CHECK_FALSE(c.km.use_profile);
    CHECK(c.km.lags == std::vector<std::size_t>{1, 2});
    REQUIRE(c.series.size() == 1);
    const auto& g = std::get<GeneratorSpec>(c.series[0].source);
    CHECK(g.hurst == 0.7);
    CHECK(g.sample_interval == Duration{900});
    CHECK(g.label == "a");
    CHECK(c.series[0].bands.size() == 2);
}

TEST_CASE("parse_config csv source resolves relative paths") {
    json s = {{"label", "csv"},
              {"source",
               {{"type", "csv"},
                {"path", "prices.csv"},
                {"sample_interval", "1h"},
                {"timestamp_format", "epoch_seconds"},
                {"delimiter", ";"},
                {"decimal_separator", ","},
                {"dst_rule", "none"},
                {"max_fill", 2}}},
              {"bands", json::array({{{"name", "hourly"}}})}};
    const auto c = parse_config(base_config(json::array({s})), "/base");
    const auto& csv = std::get<CsvSource>(c.series[0].source);
    CHECK(csv.path == std::filesystem::path("/base/prices.csv"));
    CHECK(csv.schema.timestamp_format == TimestampFormat::EpochSeconds);
    CHECK(csv.schema.delimiter == ';');
    CHECK(csv.schema.decimal_separator == ',');
    CHECK(csv.schema.dst_rule == DstRule::None);
    CHECK(csv.gap_policy.max_fill == 2);
}

TEST_CASE("config validation errors") {
    CHECK(config_error(base_config(json::array())) == ErrorCode::InvalidConfig);
    CHECK(config_error(json::array()) == ErrorCode::InvalidConfig);
    json missing = base_config(json::array({generator_series("a", "fgn", 0.7, 4096, 1)}));
    missing.erase("km");
    CHECK(config_error(missing) == ErrorCode::InvalidConfig);
    json dup = base_config(json::array({generator_series("a", "fgn", 0.7, 4096, 1),
                                        generator_series("a", "fgn", 0.6, 4096, 2)}));
    CHECK(config_error(dup) == ErrorCode::InvalidConfig);
    json bad_kind = base_config(json::array({generator_series("a", "cascade", 0.7, 4096, 1)}));
    CHECK(config_error(bad_kind) == ErrorCode::InvalidConfig);
    json bad_h = base_config(json::array({generator_series("a", "fgn", 1.5, 4096, 1)}));
    CHECK(config_error(bad_h) == ErrorCode::InvalidConfig);
    json custom = base_config(json::array({generator_series("a", "fgn", 0.7, 4096, 1)}));
    custom["series"][0]["bands"] = json::array({{{"name", "mine"}, {"tau_min", 4}}});
    CHECK(config_error(custom) == ErrorCode::InvalidConfig);
    json lags = base_config(json::array({generator_series("a", "fgn", 0.7, 4096, 1)}));
    lags["km"]["lags"] = {2, 4};
    CHECK(config_error(lags) == ErrorCode::InvalidConfig);
    json type = base_config(json::array({generator_series("a", "fgn", 0.7, 4096, 1)}));
    type["autocovariance"]["max_lag"] = "many";
    CHECK(config_error(type) == ErrorCode::InvalidConfig);
    json bw = base_config(json::array({generator_series("a", "fgn", 0.7, 4096, 1)}));
    bw["km"]["bandwidth"] = "silverman";
    CHECK(config_error(bw) == ErrorCode::InvalidConfig);
    CHECK_THROWS_AS((void)load_config(kFixtures / "missing.json"), Error);
}

TEST_CASE("fGn H = 0.7 end to end") {
    const auto c = parse_config(base_config(json::array({generator_series("fgn", "fgn", 0.7, 1u << 16, 1)})));
    const auto run = analyze(c);
    REQUIRE(run.failures.empty());
    const auto& s = run.results.at(0);
    const auto& hourly = s.bands.at(0);
    CHECK(hourly.band.name == "hourly");
    CHECK(hourly.band.tau_lo == 4);
    CHECK(hourly.band.tau_hi == 48);
    CHECK(hourly.distribution.summary.mean >= 0.65);
    CHECK(hourly.distribution.summary.mean <= 0.75);
    REQUIRE(hourly.h_km);
    CHECK(*hourly.h_km >= 0.6);
    CHECK(*hourly.h_km <= 0.8);
    CHECK_FALSE(hourly.discrepancy);
    const auto& daily = s.bands.at(1);
    CHECK(daily.band.detrend_order == 2);
    CHECK_FALSE(daily.h_km);
    CHECK(s.seed == 1u);
}

TEST_CASE("jigsaw is anti-persistent") {
    const auto c = parse_config(base_config(json::array({generator_series("jig", "jigsaw", 0.5, 1u << 15, 2)})));
    const auto run = analyze(c);
    REQUIRE(run.failures.empty());
    const auto& s = run.results.at(0);
    CHECK(s.autocovariance.values.at(1) < -0.2);
    CHECK(s.bands.at(0).distribution.summary.mean < 0.5);
}

TEST_CASE("discrepancy flag iff |H_KM - mean| > threshold") {
    const auto c = parse_config(base_config(json::array({generator_series("jig", "jigsaw", 0.5, 1u << 14, 3),
                                                          generator_series("fgn", "fgn", 0.6, 1u << 15, 3)})));
    const auto run = analyze(c);
    for (const auto& s : run.results) {
        for (const auto& b : s.bands) {
            if (!b.h_km) {
                CHECK_FALSE(b.discrepancy);
                continue;
            }
            CHECK(b.discrepancy == (std::abs(*b.h_km - b.distribution.summary.mean) > kDiscrepancyThreshold));
        }
    }
}

TEST_CASE("regime composite: persistent short scales, anti-persistent long scales") {
    // two-point moving average of strongly anti-persistent fGn at hourly sampling
    const auto base = testing::synth(GeneratorKind::Fgn, 1u << 16, 7, 0.2);
    std::vector<double> v(base.size() - 1);
    for (std::size_t i = 0; i + 1 < base.size(); ++i) v[i] = 0.5 * (base[i] + base[i + 1]);
    const TimeSeries x(v, Timestamp{}, Duration{3600}, "regime");
    AnalysisConfig c = parse_config(base_config(json::array({generator_series("unused", "fgn", 0.5, 64, 0)})));
    const auto r = analyze_series(x, c.series[0].bands, c);
    CHECK(r.bands.at(0).distribution.summary.mean > 0.5);
    CHECK(r.bands.at(1).distribution.summary.mean < 0.5);
}

TEST_CASE("failures are collected and the run continues") {
    json bad = {{"label", "missing-file"},
                {"source", {{"type", "csv"}, {"path", "no/such/file.csv"}, {"sample_interval", "1h"}}},
                {"bands", json::array({{{"name", "hourly"}}})}};
    json tiny = generator_series("tiny", "fgn", 0.5, 64, 1);
    const auto c = parse_config(base_config(json::array({bad, tiny, generator_series("ok", "fgn", 0.5, 1u << 13, 1)})));
    const auto run = analyze(c);
    CHECK(run.exit_status() == 1);
    REQUIRE(run.failures.size() == 2);
    CHECK(run.failures[0].label == "missing-file");
    CHECK(run.failures[0].stage == "load");
    CHECK(run.failures[1].label == "tiny");
    CHECK(run.failures[1].stage == "analysis");
    REQUIRE(run.results.size() == 1);
    CHECK(run.results[0].label == "ok");

    // completeness: every configured series is either a result or a failure
    const auto report = build_report(run, c, {false, ""});
    CHECK(report["series"].size() + report["failures"].size() == c.series.size());
}

TEST_CASE("csv series runs through the pipeline with its ingest report") {
    // 15-minute fixture series written on the fly
    const auto dir = scratch("csv");
    std::filesystem::create_directories(dir);
    GeneratorSpec g;
    g.length = 8192;
    g.seed = 4;
    g.hurst = 0.6;
    g.sample_interval = Duration{900};
    write_csv(generate(g), dir / "prices.csv");
    json s = {{"label", "csv"},
              {"source", {{"type", "csv"}, {"path", "prices.csv"}, {"timestamp_column", "timestamp_utc"},
                          {"sample_interval", "15min"}}},
              {"bands", json::array({{{"name", "hourly"}}})}};
    const auto c = parse_config(base_config(json::array({s})), dir);
    const auto run = analyze(c);
    REQUIRE(run.failures.empty());
    REQUIRE(run.results[0].ingest);
    CHECK(run.results[0].ingest->length == 8192);
    CHECK_FALSE(run.results[0].seed);
    const auto report = build_report(run, c, {false, ""});
    CHECK(report["series"][0]["ingest"]["rows_read"] == 8192);
    std::filesystem::remove_all(dir);
}

TEST_CASE("report has the Table I shape and provenance") {
    const auto c = parse_config(base_config(json::array({generator_series("year", "fgn", 0.7, 8760, 5, "1h")})));
    const auto run = analyze(c);
    REQUIRE(run.failures.empty());
    const auto report = build_report(run, c, {true, "config text"});
    REQUIRE(report["table"].size() == 1);
    const auto& row = report["table"][0];
    CHECK(row["series"] == "year");
    for (const char* band : {"hourly", "daily"}) {
        CHECK(row[band]["mean"].is_number());
        CHECK(row[band]["std"].is_number());
    }
    CHECK(row["h_km"].is_number());
    const auto& prov = report["provenance"];
    CHECK(prov["tool"] == "hurstkit");
    CHECK(prov["config_hash"] == fnv1a_hex("config text"));
    CHECK(prov["seeds"] == json::array({5}));
    CHECK(prov["generated_at"].is_string());
    const auto& bands = report["series"][0]["bands"];
    CHECK(bands[0]["h_km"].is_number());
    CHECK(bands[1]["h_km"].is_null());
    for (const char* key : {"mean", "std", "median", "q1", "q3", "whisker_low", "whisker_high", "outliers"}) {
        CHECK(bands[0]["mfdfa"].contains(key));
    }
}

TEST_CASE("reports are reproducible apart from the timestamp") {
    const auto c = parse_config(base_config(json::array({generator_series("a", "fgn", 0.6, 1u << 13, 9),
                                                          generator_series("b", "jigsaw", 0.5, 1u << 13, 9)})));
    const auto a = build_report(analyze(c), c, {false, "x"}).dump(2);
    const auto b = build_report(analyze(c), c, {false, "x"}).dump(2);
    CHECK(a == b);
    auto t1 = build_report(analyze(c), c, {true, "x"});
    t1["provenance"].erase("generated_at");
    CHECK(t1.dump(2) == a);
}

TEST_CASE("run_analysis writes report and plot files atomically") {
    const auto dir = scratch("run");
    const auto c = parse_config(base_config(json::array({generator_series("fgn 1", "fgn", 0.5, 1u << 13, 2)})));
    CHECK(run_analysis(c, dir, {false, ""}) == 0);
    for (const char* f : {"report.json", "table.tsv", "autocov_fgn_1.tsv", "box_fgn_1.tsv", "km_fgn_1.tsv",
                          "surface_fgn_1_hourly.tsv", "surface_fgn_1_daily.tsv"}) {
        CHECK(std::filesystem::exists(dir / f));
    }
    for (const auto& e : std::filesystem::directory_iterator(dir)) CHECK(e.path().extension() != ".tmp");

    const auto ac = lines_of(slurp(dir / "autocov_fgn_1.tsv"));
    CHECK(ac[0] == "lag\tvalue");
    CHECK(ac[1] == "0\t1");
    CHECK(ac.size() == 26);

    const auto box = lines_of(slurp(dir / "box_fgn_1.tsv"));
    CHECK(box[0] == "band\ttau_min\ttau_max\tdetrend_order\twhisker_low\tq1\tmedian\tq3\twhisker_high\tmean\tstd\twindows");
    CHECK(box.size() == 3);
    CHECK(box[1].rfind("hourly\t4\t48\t1\t", 0) == 0);

    const auto surf = lines_of(slurp(dir / "surface_fgn_1_hourly.tsv"));
    CHECK(surf[0] == "q\ttau\tlog_tau\tF\tlog_F");

    const auto km = lines_of(slurp(dir / "km_fgn_1.tsv"));
    CHECK(km[0] == "dx\tD1\tD2\tcount\tusable");
    CHECK(km.size() == 102);
    // central row (dx = 0) of a symmetric input has a small drift
    std::istringstream mid(km[51]);
    double dx = 1, d1 = 1;
    mid >> dx >> d1;
    CHECK(dx == 0.0);
    CHECK(std::abs(d1) < 0.05);

    const auto table = lines_of(slurp(dir / "table.tsv"));
    CHECK(table[0] == "series\thourly_mean\thourly_std\tdaily_mean\tdaily_std\th_km");
    CHECK(table[1].rfind("fgn 1\t", 0) == 0);

    const auto report = json::parse(slurp(dir / "report.json"));
    CHECK(report["schema"] == "hurst-report/1");
    std::filesystem::remove_all(dir);
}

TEST_CASE("emit_plotdata into an unwritable location fails with an I/O error") {
    const auto dir = scratch("blocked");
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "file") << "x";
    AnalysisRun run;
    try {
        emit_plotdata(run, dir / "file" / "sub");
        FAIL("expected I/O error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Io);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("helpers") {
    CHECK(slug("EPEX DA/hourly") == "EPEX_DA_hourly");
    CHECK(slug("a-b_c.d") == "a-b_c.d");
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}
