#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "erule/calendar.hpp"
#include "erule/series.hpp"

namespace erule {

struct Day {
    int year = 1970;
    int month = 1;
    int day = 1;

    /// Accepts "YYYY-MM-DD"; throws std::invalid_argument otherwise.
    static Day parse(std::string_view text);
    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] MonthDate month_date() const { return {year, month}; }

    friend auto operator<=>(const Day&, const Day&) = default;
};

struct Observation {
    Day date;
    std::optional<double> value;  // nullopt is FRED's "." marker

    friend bool operator==(const Observation&, const Observation&) = default;
};

struct RawSeries {
    std::string series_id;
    std::vector<Observation> observations;

    friend bool operator==(const RawSeries&, const RawSeries&) = default;
};

/// Parses a FRED CSV export (`DATE,<ID>` header, `YYYY-MM-DD,<value|.>` rows).
/// Throws ParseError naming the offending line.
[[nodiscard]] RawSeries parse_fred_csv(std::string_view text);

/// Inverse of parse_fred_csv; values use the shortest round-trip form.
[[nodiscard]] std::string serialize_fred_csv(const RawSeries& raw);

enum class Aggregator { mean, last };

[[nodiscard]] MonthlySeries to_monthly(const RawSeries& raw, Aggregator aggregator, Unit unit);

/// Unit and aggregation used for a known series id.
struct SeriesRule {
    Unit unit;
    Aggregator aggregator;
};

/// Known ids: UNRATE, GS10, GS2, T10Y2Y, SAHMREALTIME. Unknown ids default to
/// percent / mean.
[[nodiscard]] SeriesRule series_rule(std::string_view series_id);

inline constexpr std::string_view kDefaultEndpoint =
    "https://fred.stlouisfed.org/graph/fredgraph.csv?id={series_id}";

struct SourceConfig {
    std::filesystem::path data_dir;
    bool offline_only = false;
    std::string endpoint_template{kDefaultEndpoint};
};

/// `cfg` with E_RULE_DATA_DIR applied when that variable is set.
[[nodiscard]] SourceConfig apply_environment(SourceConfig cfg);

/// HTTP GET returning the body; throws TransportError on any failure.
class Transport {
public:
    virtual ~Transport() = default;
    virtual std::string get(const std::string& url) = 0;
};

/// libcurl-backed transport.
class CurlTransport final : public Transport {
public:
    explicit CurlTransport(long timeout_seconds = 30) : timeout_seconds_(timeout_seconds) {}
    std::string get(const std::string& url) override;

private:
    long timeout_seconds_;
};

/// Loads `{data_dir}/{id}.csv`; when absent and not offline, fetches it,
/// caches the raw bytes atomically and parses them.
[[nodiscard]] MonthlySeries load_series(const std::string& id, const SourceConfig& cfg, Transport& transport);
/// Same, with a CurlTransport.
[[nodiscard]] MonthlySeries load_series(const std::string& id, const SourceConfig& cfg);

/// Writes `bytes` to `path` through a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

[[nodiscard]] RecessionCalendar parse_calendar(std::string_view text);
[[nodiscard]] RecessionCalendar load_calendar(const std::filesystem::path& path);
[[nodiscard]] std::string serialize_calendar(const RecessionCalendar& calendar);

[[nodiscard]] std::string read_file(const std::filesystem::path& path);

}  // namespace erule
