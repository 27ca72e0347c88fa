#include "hurst/ingest.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hurst/error.hpp"

namespace hurst {

namespace {

using namespace std::chrono;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delimiter, start);
        if (pos == std::string_view::npos) {
            cells.push_back(trim(line.substr(start)));
            return cells;
        }
        cells.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
}

Error parse_error(std::string_view source, std::size_t line, const std::string& what) {
    return Error(ErrorCode::Parse, std::string(source) + ":" + std::to_string(line) + ": " + what);
}

bool read_int(std::string_view text, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > text.size()) return false;
    const char* first = text.data() + pos;
    auto [ptr, ec] = std::from_chars(first, first + len, out);
    return ec == std::errc{} && ptr == first + len;
}

struct Row {
    Timestamp t;
    double value;
    std::size_t line;
};

}  // namespace

void validate(const IngestSchema& schema) {
    if (schema.delimiter == schema.decimal_separator) {
        throw Error(ErrorCode::InvalidConfig, "delimiter and decimal separator must differ");
    }
    if (schema.decimal_separator != '.' && schema.decimal_separator != ',') {
        throw Error(ErrorCode::InvalidConfig, "decimal separator must be '.' or ','");
    }
    if (schema.sample_interval.count() <= 0) {
        throw Error(ErrorCode::InvalidConfig, "expected sample interval must be positive");
    }
    if (schema.timestamp_column.empty() || schema.price_column.empty()) {
        throw Error(ErrorCode::InvalidConfig, "timestamp and price column names are required");
    }
}

Timestamp parse_iso8601(std::string_view text) {
    // YYYY-MM-DD[T ]HH:MM[:SS[.fff]][Z|+HH:MM|-HH:MM|+HHMM]
    int y = 0, mo = 0, d = 0, hh = 0, mm = 0, ss = 0;
    if (!read_int(text, 0, 4, y) || text.size() < 16 || text[4] != '-' || !read_int(text, 5, 2, mo) ||
        text[7] != '-' || !read_int(text, 8, 2, d) || (text[10] != 'T' && text[10] != ' ') ||
        !read_int(text, 11, 2, hh) || text[13] != ':' || !read_int(text, 14, 2, mm)) {
        throw Error(ErrorCode::Parse, "malformed ISO-8601 timestamp '" + std::string(text) + "'");
    }
    std::size_t pos = 16;
    if (pos < text.size() && text[pos] == ':') {
        if (!read_int(text, pos + 1, 2, ss)) {
            throw Error(ErrorCode::Parse, "malformed seconds in '" + std::string(text) + "'");
        }
        pos += 3;
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
                if (text[pos] != '0') {
                    throw Error(ErrorCode::Parse, "sub-second timestamps are not supported");
                }
                ++pos;
            }
        }
    }
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || hh > 23 || mm > 59 || ss > 59) {
        throw Error(ErrorCode::Parse, "timestamp out of range '" + std::string(text) + "'");
    }
    Timestamp t = sys_days{ymd} + hours{hh} + minutes{mm} + seconds{ss};

    if (pos == text.size()) return t;
    if (text[pos] == 'Z' && pos + 1 == text.size()) return t;
    if (text[pos] == '+' || text[pos] == '-') {
        const int sign = text[pos] == '+' ? 1 : -1;
        int oh = 0, om = 0;
        const std::string_view off = text.substr(pos + 1);
        bool ok = false;
        if (off.size() == 5 && off[2] == ':') ok = read_int(off, 0, 2, oh) && read_int(off, 3, 2, om);
        else if (off.size() == 4) ok = read_int(off, 0, 2, oh) && read_int(off, 2, 2, om);
        else if (off.size() == 2) ok = read_int(off, 0, 2, oh);
        if (ok && oh <= 23 && om <= 59) {
            // local = UTC + offset
            return t - sign * (hours{oh} + minutes{om});
        }
    }
    throw Error(ErrorCode::Parse, "malformed UTC offset in '" + std::string(text) + "'");
}

std::string format_timestamp(Timestamp t) {
    const sys_days day_point = floor<days>(t);
    const year_month_day ymd{day_point};
    const hh_mm_ss<seconds> tod{t - day_point};
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%04d-%02u-%02uT%02ld:%02ld:%02ldZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<long>(tod.hours().count()), static_cast<long>(tod.minutes().count()),
                  static_cast<long>(tod.seconds().count()));
    return buf.data();
}

Duration parse_duration(std::string_view text) {
    long long value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || value <= 0) {
        throw Error(ErrorCode::InvalidConfig, "malformed duration '" + std::string(text) + "'");
    }
    const std::string_view unit = text.substr(static_cast<std::size_t>(ptr - first));
    if (unit.empty() || unit == "s") return Duration{value};
    if (unit == "min" || unit == "m") return Duration{value * 60};
    if (unit == "h") return Duration{value * 3600};
    if (unit == "d") return Duration{value * 86400};
    throw Error(ErrorCode::InvalidConfig, "unknown duration unit in '" + std::string(text) + "'");
}

std::string format_duration(Duration d) {
    const long long s = d.count();
    if (s % 3600 == 0) return std::to_string(s / 3600) + "h";
    if (s % 60 == 0) return std::to_string(s / 60) + "min";
    return std::to_string(s) + "s";
}

bool on_eu_dst_transition_day(Timestamp t) {
    const year_month_day ymd{floor<days>(t)};
    if (ymd.month() != March && ymd.month() != October) return false;
    const sys_days last_sunday{year_month_weekday_last{ymd.year(), ymd.month(), weekday_last{Sunday}}};
    return floor<days>(t) == last_sunday;
}

IngestResult parse_csv(std::istream& in, const IngestSchema& schema, const GapPolicy& gap_policy,
                       std::string_view source) {
    validate(schema);
    std::string line;
    std::size_t line_no = 0;

    // header
    std::vector<std::string_view> header;
    std::string header_line;
    while (std::getline(in, header_line)) {
        ++line_no;
        if (line_no == 1 && header_line.rfind("\xEF\xBB\xBF", 0) == 0) header_line.erase(0, 3);
        if (!trim(header_line).empty()) break;
    }
    if (trim(header_line).empty()) {
        throw parse_error(source, line_no, "missing header row");
    }
    header = split(header_line, schema.delimiter);
    const auto column = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw parse_error(source, line_no, "column '" + name + "' not in header");
        }
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t ts_col = column(schema.timestamp_column);
    const std::size_t price_col = column(schema.price_column);

    std::vector<Row> rows;
    std::string number;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split(line, schema.delimiter);
        if (cells.size() <= std::max(ts_col, price_col)) {
            throw parse_error(source, line_no, "expected at least " +
                                                   std::to_string(std::max(ts_col, price_col) + 1) +
                                                   " columns");
        }
        Row row{};
        row.line = line_no;
        try {
            if (schema.timestamp_format == TimestampFormat::Iso8601) {
                row.t = parse_iso8601(cells[ts_col]);
            } else {
                long long epoch = 0;
                const auto cell = cells[ts_col];
                auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), epoch);
                if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
                    throw Error(ErrorCode::Parse, "malformed epoch seconds '" + std::string(cell) + "'");
                }
                row.t = Timestamp{seconds{epoch}};
            }
        } catch (const Error& e) {
            throw parse_error(source, line_no, e.what());
        }

        number.assign(cells[price_col]);
        if (schema.decimal_separator == ',') std::replace(number.begin(), number.end(), ',', '.');
        const char* first = number.data();
        const char* last = number.data() + number.size();
        if (first != last && *first == '+') ++first;
        auto [ptr, ec] = std::from_chars(first, last, row.value);
        if (number.empty() || ec != std::errc{} || ptr != last || !std::isfinite(row.value)) {
            throw parse_error(source, line_no, "unparseable price '" + std::string(cells[price_col]) + "'");
        }
        rows.push_back(row);
    }
    if (rows.size() < 2) {
        throw parse_error(source, line_no, "need at least 2 data rows");
    }

    const bool eu = schema.dst_rule == DstRule::Eu;
    IngestReport report;
    report.rows_read = rows.size();

    // merge runs of identical timestamps
    std::vector<std::pair<Timestamp, double>> merged;
    for (std::size_t i = 0; i < rows.size();) {
        if (i > 0 && rows[i].t < rows[i - 1].t) {
            throw Error(ErrorCode::Ordering, std::string(source) + ":" + std::to_string(rows[i].line) +
                                                 ": timestamp " + format_timestamp(rows[i].t) +
                                                 " precedes " + format_timestamp(rows[i - 1].t));
        }
        std::size_t j = i;
        double sum = 0.0;
        while (j < rows.size() && rows[j].t == rows[i].t) sum += rows[j++].value;
        const std::size_t count = j - i;
        const double value = sum / static_cast<double>(count);
        if (count > 1) {
            DuplicateEvent dup{rows[i].t, count, value, eu && on_eu_dst_transition_day(rows[i].t)};
            if (dup.dst) report.dst_rows_affected += count;
            report.duplicates.push_back(dup);
        }
        merged.emplace_back(rows[i].t, value);
        i = j;
    }
    if (merged.size() < 2) {
        throw parse_error(source, line_no, "need at least 2 distinct timestamps");
    }

    const Duration step = schema.sample_interval;
    const Timestamp t0 = merged.front().first;
    std::vector<double> values{merged.front().second};
    for (std::size_t i = 1; i < merged.size(); ++i) {
        const auto [t_prev, v_prev] = merged[i - 1];
        const auto [t, v] = merged[i];
        if ((t - t0) % step != Duration{0}) {
            throw Error(ErrorCode::Parse, std::string(source) + ": timestamp " + format_timestamp(t) +
                                              " is not on the " + format_duration(step) + " grid");
        }
        const auto missing = static_cast<std::size_t>((t - t_prev) / step) - 1;
        if (missing > 0) {
            if (missing > gap_policy.max_fill) {
                throw Error(ErrorCode::UnfillableGap,
                            std::string(source) + ": " + std::to_string(missing) +
                                " missing samples after " + format_timestamp(t_prev) +
                                " exceed max_fill = " + std::to_string(gap_policy.max_fill));
            }
            GapEvent gap{t_prev + step, missing, "linear", eu && on_eu_dst_transition_day(t_prev + step)};
            if (gap.dst) report.dst_rows_affected += missing;
            report.gaps.push_back(gap);
            for (std::size_t k = 1; k <= missing; ++k) {
                const double frac = static_cast<double>(k) / static_cast<double>(missing + 1);
                values.push_back(v_prev + frac * (v - v_prev));
            }
        }
        values.push_back(v);
    }
    report.length = values.size();

    std::string label = schema.label.empty() ? std::string(source) : schema.label;
    return {TimeSeries(std::move(values), t0, step, std::move(label)), std::move(report)};
}

IngestResult load_csv(const std::filesystem::path& path, const IngestSchema& schema,
                      const GapPolicy& gap_policy) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
    }
    IngestSchema named = schema;
    if (named.label.empty()) named.label = path.stem().string();
    return parse_csv(in, named, gap_policy, path.string());
}

TimeSeries slice_series(const TimeSeries& x, Timestamp start, Timestamp end) {
    if (!(start < end)) {
        throw Error(ErrorCode::Range, "slice start must precede its end");
    }
    if (start < x.start_time() || end > x.end_time()) {
        throw Error(ErrorCode::Range, "slice [" + format_timestamp(start) + ", " + format_timestamp(end) +
                                          ") is outside the series span");
    }
    const Duration step = x.sample_interval();
    // first index with time >= start, first index with time >= end
    const auto ceil_index = [&](Timestamp t) {
        const auto offset = (t - x.start_time()).count();
        return static_cast<std::size_t>((offset + step.count() - 1) / step.count());
    };
    const std::size_t first = ceil_index(start);
    const std::size_t last = std::min(ceil_index(end), x.size());
    if (last <= first || last - first < 2) {
        throw Error(ErrorCode::Range, "slice holds fewer than 2 samples");
    }
    const auto v = x.values();
    return TimeSeries(std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(first),
                                          v.begin() + static_cast<std::ptrdiff_t>(last)),
                      x.time_at(first), step, x.label());
}

void write_csv(const TimeSeries& x, std::ostream& out) {
    out << "timestamp_utc,price\n";
    std::array<char, 64> buf{};
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x[i]);
        out << format_timestamp(x.time_at(i)) << ',' << std::string_view(buf.data(), static_cast<std::size_t>(ptr - buf.data()))
            << '\n';
    }
}

void write_csv(const TimeSeries& x, const std::filesystem::path& path) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::Io, "cannot write '" + tmp.string() + "'");
        write_csv(x, out);
        if (!out) throw Error(ErrorCode::Io, "write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot rename to '" + path.string() + "': " + ec.message());
}

IngestSchema export_schema(Duration sample_interval) {
    IngestSchema schema;
    schema.timestamp_column = "timestamp_utc";
    schema.price_column = "price";
    schema.sample_interval = sample_interval;
    return schema;
}

}  // namespace hurst
