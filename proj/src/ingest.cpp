#include "erule/ingest.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <atomic>
#include <thread>
#include <unistd.h>

#include <curl/curl.h>

#include "erule/errors.hpp"

namespace erule {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            if (pos < text.size()) lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    // Whitespace-only trailing lines are ignored.
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    return lines;
}

bool split_pair(std::string_view line, std::string_view& a, std::string_view& b) {
    auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) return false;
    a = trim(line.substr(0, comma));
    b = trim(line.substr(comma + 1));
    return true;
}

bool parse_double(std::string_view s, double& out) {
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

bool leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
    static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return m == 2 && leap(y) ? 29 : kDays[m - 1];
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

Day Day::parse(std::string_view text) {
    auto fail = [&] { return std::invalid_argument("expected YYYY-MM-DD, got '" + std::string(text) + "'"); };
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') throw fail();
    Day d;
    auto num = [&](std::size_t off, std::size_t len, int& out) {
        auto [p, ec] = std::from_chars(text.data() + off, text.data() + off + len, out);
        if (ec != std::errc{} || p != text.data() + off + len) throw fail();
    };
    num(0, 4, d.year);
    num(5, 2, d.month);
    num(8, 2, d.day);
    if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > days_in_month(d.year, d.month)) throw fail();
    return d;
}

std::string Day::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
    return buf;
}

RawSeries parse_fred_csv(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw ParseError("empty input: missing header");

    RawSeries raw;
    std::string_view h1;
    std::string_view h2;
    if (!split_pair(lines[0], h1, h2) || h1.empty() || h2.empty()) {
        throw ParseError("missing header: expected two columns", 1);
    }
    try {
        (void)Day::parse(h1);
        throw ParseError("missing header: first line is a data row", 1);
    } catch (const std::invalid_argument&) {
    }
    raw.series_id = std::string(h2);

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        std::string_view ds;
        std::string_view vs;
        if (!split_pair(lines[i], ds, vs)) throw ParseError("expected two columns", line_no);
        Observation obs;
        try {
            obs.date = Day::parse(ds);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), line_no);
        }
        if (vs != ".") {
            double v = 0.0;
            if (!parse_double(vs, v)) throw ParseError("non-numeric value '" + std::string(vs) + "'", line_no);
            obs.value = v;
        }
        if (!raw.observations.empty() && !(raw.observations.back().date < obs.date)) {
            throw ParseError("dates not strictly increasing", line_no);
        }
        raw.observations.push_back(obs);
    }
    return raw;
}

std::string serialize_fred_csv(const RawSeries& raw) {
    std::string out = "DATE," + raw.series_id + "\n";
    for (const auto& obs : raw.observations) {
        out += obs.date.to_string();
        out += ',';
        out += obs.value ? format_double(*obs.value) : std::string(".");
        out += '\n';
    }
    return out;
}

MonthlySeries to_monthly(const RawSeries& raw, Aggregator aggregator, Unit unit) {
    std::vector<SeriesPoint> pts;
    std::optional<MonthDate> current;
    double sum = 0.0;
    double last = 0.0;
    int count = 0;
    auto flush = [&] {
        if (current && count > 0) {
            pts.push_back({*current, aggregator == Aggregator::mean ? sum / count : last});
        }
    };
    for (const auto& obs : raw.observations) {
        const auto m = obs.date.month_date();
        if (!current || *current != m) {
            flush();
            current = m;
            sum = 0.0;
            count = 0;
        }
        if (obs.value) {
            sum += *obs.value;
            last = *obs.value;
            ++count;
        }
    }
    flush();
    return {raw.series_id, unit, std::move(pts)};
}

SeriesRule series_rule(std::string_view id) {
    static const std::map<std::string_view, SeriesRule> kRules{
        {"UNRATE", {Unit::percent, Aggregator::last}},
        {"GS10", {Unit::percent, Aggregator::mean}},
        {"GS2", {Unit::percent, Aggregator::mean}},
        {"DGS10", {Unit::percent, Aggregator::mean}},
        {"DGS2", {Unit::percent, Aggregator::mean}},
        {"T10Y2Y", {Unit::percentage_points, Aggregator::mean}},
        {"T10Y2YM", {Unit::percentage_points, Aggregator::mean}},
        {"SAHMREALTIME", {Unit::percentage_points, Aggregator::last}},
        {"SAHMCURRENT", {Unit::percentage_points, Aggregator::last}},
    };
    auto it = kRules.find(id);
    return it == kRules.end() ? SeriesRule{Unit::percent, Aggregator::mean} : it->second;
}

SourceConfig apply_environment(SourceConfig cfg) {
    if (const char* env = std::getenv("E_RULE_DATA_DIR"); env != nullptr && *env != '\0') cfg.data_dir = env;
    return cfg;
}

namespace {

std::size_t curl_write(char* data, std::size_t size, std::size_t nmemb, void* user) {
    static_cast<std::string*>(user)->append(data, size * nmemb);
    return size * nmemb;
}

struct CurlGlobal {
    CurlGlobal() { curl_global_init(CURL_GLOBAL_DEFAULT); }
    ~CurlGlobal() { curl_global_cleanup(); }
};

}  // namespace

std::string CurlTransport::get(const std::string& url) {
    static CurlGlobal global;
    std::unique_ptr<CURL, decltype(&curl_easy_cleanup)> handle(curl_easy_init(), &curl_easy_cleanup);
    if (!handle) throw TransportError("curl initialisation failed");
    std::string body;
    curl_easy_setopt(handle.get(), CURLOPT_URL, url.c_str());
    curl_easy_setopt(handle.get(), CURLOPT_FOLLOWLOCATION, 1L);
    curl_easy_setopt(handle.get(), CURLOPT_TIMEOUT, timeout_seconds_);
    curl_easy_setopt(handle.get(), CURLOPT_NOSIGNAL, 1L);
    curl_easy_setopt(handle.get(), CURLOPT_WRITEFUNCTION, curl_write);
    curl_easy_setopt(handle.get(), CURLOPT_WRITEDATA, &body);
    curl_easy_setopt(handle.get(), CURLOPT_USERAGENT, "erule/1.0");
    if (auto rc = curl_easy_perform(handle.get()); rc != CURLE_OK) {
        throw TransportError("GET " + url + ": " + curl_easy_strerror(rc));
    }
    long status = 0;
    curl_easy_getinfo(handle.get(), CURLINFO_RESPONSE_CODE, &status);
    if (status != 200) throw TransportError("GET " + url + ": HTTP " + std::to_string(status));
    return body;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NotFoundError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
    static std::atomic<unsigned long> counter{0};
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid()) + "." +
           std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + "." +
           std::to_string(counter.fetch_add(1));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCategory::data, "cannot write " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw Error(ErrorCategory::data, "short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorCategory::data, "cannot move cache file into place: " + path.string());
    }
}

MonthlySeries load_series(const std::string& id, const SourceConfig& cfg, Transport& transport) {
    const auto rule = series_rule(id);
    const auto path = cfg.data_dir / (id + ".csv");

    std::string text;
    if (std::filesystem::exists(path)) {
        text = read_file(path);
    } else {
        if (cfg.offline_only) {
            throw NotFoundError("series " + id + " not found in " + cfg.data_dir.string() + " (offline mode)");
        }
        std::string url = cfg.endpoint_template;
        if (auto pos = url.find("{series_id}"); pos != std::string::npos) url.replace(pos, 11, id);
        text = transport.get(url);
        // Validate before caching so a bad response never lands in the cache.
        (void)parse_fred_csv(text);
        std::error_code ec;
        std::filesystem::create_directories(cfg.data_dir, ec);
        write_file_atomic(path, text);
    }
    auto raw = parse_fred_csv(text);
    if (raw.series_id != id) raw.series_id = id;
    return to_monthly(raw, rule.aggregator, rule.unit);
}

MonthlySeries load_series(const std::string& id, const SourceConfig& cfg) {
    CurlTransport transport;
    return load_series(id, cfg, transport);
}

RecessionCalendar parse_calendar(std::string_view text) {
    const auto lines = split_lines(text);
    std::string_view a;
    std::string_view b;
    if (lines.empty() || !split_pair(lines[0], a, b) || a != "start" || b != "end") {
        throw ParseError("calendar header must be 'start,end'", 1);
    }
    std::vector<RecessionInterval> intervals;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (!split_pair(lines[i], a, b)) throw ParseError("expected two columns", i + 1);
        try {
            intervals.push_back({MonthDate::parse(a), MonthDate::parse(b)});
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), i + 1);
        }
    }
    return RecessionCalendar(std::move(intervals));
}

RecessionCalendar load_calendar(const std::filesystem::path& path) { return parse_calendar(read_file(path)); }

std::string serialize_calendar(const RecessionCalendar& calendar) {
    std::string out = "start,end\n";
    for (const auto& iv : calendar.intervals()) out += iv.start.to_string() + "," + iv.end.to_string() + "\n";
    return out;
}

}  // namespace erule
