#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include <httplib.h>

#include "erule/errors.hpp"
#include "erule/ingest.hpp"

using namespace erule;
namespace fs = std::filesystem;
using Catch::Approx;

namespace {

struct StubTransport : Transport {
    std::string body;
    int calls = 0;
    std::string last_url;
    std::string get(const std::string& url) override {
        ++calls;
        last_url = url;
        return body;
    }
};

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() / ("erule_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("parse_fred_csv examples") {
    auto r = parse_fred_csv("DATE,T10Y2Y\n2007-08-01,0.12\n");
    CHECK(r.series_id == "T10Y2Y");
    REQUIRE(r.observations.size() == 1);
    CHECK(r.observations[0].date.to_string() == "2007-08-01");
    CHECK(*r.observations[0].value == 0.12);

    auto m = parse_fred_csv("DATE,T10Y2Y\n2020-03-09,.\n");
    CHECK_FALSE(m.observations[0].value.has_value());

    try {
        (void)parse_fred_csv("DATE,T10Y2Y\n2020-13-01,1.0\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_fred_csv(""), ParseError);
    CHECK_THROWS_AS(parse_fred_csv("DATE,X\n2020-01-01,abc\n"), ParseError);
    CHECK_THROWS_AS(parse_fred_csv("DATE,X\n2020-02-01,1\n2020-01-01,1\n"), ParseError);
}

TEST_CASE("to_monthly examples") {
    RawSeries raw{"T10Y2Y",
                  {{Day{2020, 1, 2}, 1.0}, {Day{2020, 1, 3}, 2.0}, {Day{2020, 1, 6}, 3.0}, {Day{2020, 2, 3}, 4.1},
                   {Day{2020, 3, 2}, std::nullopt}, {Day{2020, 3, 3}, std::nullopt}, {Day{2020, 4, 1}, 0.5}}};
    auto mean = to_monthly(raw, Aggregator::mean, Unit::percentage_points);
    REQUIRE(mean.size() == 3);
    CHECK(mean[0].value == Approx(2.0));
    CHECK(mean[1].value == Approx(4.1));
    CHECK_FALSE(mean.at(MonthDate(2020, 3)).has_value());
    auto last = to_monthly(raw, Aggregator::last, Unit::percentage_points);
    CHECK(last[0].value == 3.0);
    CHECK(last[1].value == 4.1);
}

TEST_CASE("series rule table") {
    CHECK(series_rule("UNRATE").aggregator == Aggregator::last);
    CHECK(series_rule("UNRATE").unit == Unit::percent);
    CHECK(series_rule("T10Y2Y").aggregator == Aggregator::mean);
    CHECK(series_rule("T10Y2Y").unit == Unit::percentage_points);
    CHECK(series_rule("NOPE").aggregator == Aggregator::mean);
}

TEST_CASE("CSV round trip on random series") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> val(-5.0, 10.0);
    std::bernoulli_distribution missing(0.1);
    for (int trial = 0; trial < 50; ++trial) {
        RawSeries raw{"X" + std::to_string(trial), {}};
        Day d{1990, 1, 1};
        for (int i = 0; i < 100; ++i) {
            d.day += 1 + i % 3;
            if (d.day > 28) {
                d.day = 1;
                if (++d.month > 12) {
                    d.month = 1;
                    ++d.year;
                }
            }
            raw.observations.push_back({d, missing(rng) ? std::nullopt : std::optional<double>(val(rng))});
        }
        const auto text = serialize_fred_csv(raw);
        CHECK(parse_fred_csv(text) == raw);
        CHECK(serialize_fred_csv(parse_fred_csv(text)) == text);

        auto m = to_monthly(raw, Aggregator::mean, Unit::percent);
        for (std::size_t i = 1; i < m.size(); ++i) CHECK(m[i - 1].date < m[i].date);
    }
}

TEST_CASE("load_series reads the cache without touching the transport") {
    TempDir dir;
    std::ofstream(dir.path / "GS10.csv") << "DATE,GS10\n2020-01-01,1.76\n2020-02-01,1.50\n";
    StubTransport stub;
    SourceConfig cfg{dir.path, false};
    auto a = load_series("GS10", cfg, stub);
    auto b = load_series("GS10", cfg, stub);
    CHECK(stub.calls == 0);
    CHECK(a == b);
    CHECK(a.size() == 2);
}

TEST_CASE("load_series fetches once, caches raw bytes, then serves from cache") {
    TempDir dir;
    StubTransport stub;
    stub.body = "DATE,GS2\n2020-01-01,1.52\n";
    SourceConfig cfg{dir.path / "nested", false, "http://stub/{series_id}.csv"};
    auto a = load_series("GS2", cfg, stub);
    CHECK(stub.calls == 1);
    CHECK(stub.last_url == "http://stub/GS2.csv");
    CHECK(read_file(dir.path / "nested" / "GS2.csv") == stub.body);
    auto b = load_series("GS2", cfg, stub);
    CHECK(stub.calls == 1);
    CHECK(a == b);
}

TEST_CASE("a malformed response is not cached") {
    TempDir dir;
    StubTransport stub;
    stub.body = "<html>oops</html>";
    SourceConfig cfg{dir.path, false};
    CHECK_THROWS_AS(load_series("GS2", cfg, stub), ParseError);
    CHECK_FALSE(fs::exists(dir.path / "GS2.csv"));
}

TEST_CASE("offline mode with an empty cache is a not-found error") {
    TempDir dir;
    StubTransport stub;
    CHECK_THROWS_AS(load_series("UNRATE", SourceConfig{dir.path, true}, stub), NotFoundError);
    CHECK(stub.calls == 0);
}

TEST_CASE("E_RULE_DATA_DIR overrides the configured directory") {
    ::setenv("E_RULE_DATA_DIR", "/tmp/erule-env-dir", 1);
    CHECK(apply_environment(SourceConfig{"/elsewhere"}).data_dir == fs::path("/tmp/erule-env-dir"));
    ::unsetenv("E_RULE_DATA_DIR");
    CHECK(apply_environment(SourceConfig{"/elsewhere"}).data_dir == fs::path("/elsewhere"));
}

TEST_CASE("write_file_atomic replaces content and leaves no temp files") {
    TempDir dir;
    write_file_atomic(dir.path / "a.txt", "one");
    write_file_atomic(dir.path / "a.txt", "two");
    CHECK(read_file(dir.path / "a.txt") == "two");
    CHECK(std::distance(fs::directory_iterator(dir.path), fs::directory_iterator{}) == 1);
    CHECK_THROWS_AS(read_file(dir.path / "missing"), NotFoundError);
}

TEST_CASE("CurlTransport against a local HTTP server") {
    httplib::Server server;
    server.Get("/fred/UNRATE.csv", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("DATE,UNRATE\n2020-01-01,3.5\n2020-02-01,3.5\n", "text/csv");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread th([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    TempDir dir;
    SourceConfig cfg{dir.path, false, "http://127.0.0.1:" + std::to_string(port) + "/fred/{series_id}.csv"};
    CurlTransport transport(5);
    auto s = load_series("UNRATE", cfg, transport);
    CHECK(s.size() == 2);
    CHECK(fs::exists(dir.path / "UNRATE.csv"));
    CHECK_THROWS_AS(load_series("GS10", cfg, transport), TransportError);

    server.stop();
    th.join();
}
