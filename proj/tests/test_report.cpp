#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>

#include "erule/errors.hpp"
#include "erule/report.hpp"

using namespace erule;
using nlohmann::json;

namespace {

struct NoNetwork : Transport {
    std::string get(const std::string& url) override { throw TransportError("network disabled in tests: " + url); }
};

CommonOptions offline() {
    CommonOptions c;
    c.offline = true;
    c.data_dir = ERULE_TEST_DATA_DIR "/fred";
    c.calendar = ERULE_TEST_DATA_DIR "/nber_recessions.csv";
    return c;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("compute emits five CSV columns with a header") {
    NoNetwork net;
    ComputeOptions opts;
    opts.from = MonthDate(1976, 1);
    const auto r = cmd_compute(offline(), opts, net);
    std::istringstream in(r.csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "date,spread,sahm,e_rule,phase");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        CHECK(std::count(line.begin(), line.end(), ',') == 4);
        ++rows;
    }
    CHECK(rows > 500);
    CHECK(r.warnings.empty());
}

TEST_CASE("compute JSON payload is an array of monthly records") {
    NoNetwork net;
    const auto r = cmd_compute(offline(), {}, net);
    REQUIRE(r.payload.is_array());
    const auto& first = r.payload.front();
    for (const char* k : {"date", "spread", "sahm", "e_rule", "phase"}) CHECK(first.contains(k));
    const auto doc = json::parse(render_json(r));
    CHECK(doc.at("config").at("seed") == "42");
    CHECK(doc.at("config").at("band") == "0.3");
    CHECK(doc.at("schema_version") == kReportSchemaVersion);
}

TEST_CASE("an empty date range gives an empty payload and a warning") {
    NoNetwork net;
    ComputeOptions opts;
    opts.from = MonthDate(2030, 1);
    const auto r = cmd_compute(offline(), opts, net);
    CHECK(r.payload.empty());
    CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("backtest covers every calendar interval") {
    NoNetwork net;
    const auto r = cmd_backtest(offline(), {}, net);
    CHECK(r.payload.at("entries").size() == 6);
    CHECK(count_lines(r.csv) == 7);
    BacktestOptions narrow_lead;
    narrow_lead.max_lead = 3;
    const auto m = cmd_backtest(offline(), narrow_lead, net);
    CHECK(m.payload.at("entries").at(1).at("status") == "missed");
    auto c = offline();
    c.band = 0.2;
    const auto b = cmd_backtest(c, {}, net);
    CHECK(b.payload.at("band").at("hi") == 0.2);
}

TEST_CASE("simulate conserves counts and is byte-identical across runs") {
    SimulateOptions opts;
    opts.n = 1000;
    const auto a = render_json(cmd_simulate(offline(), opts));
    const auto b = render_json(cmd_simulate(offline(), opts));
    CHECK(a == b);
    const auto doc = json::parse(a);
    const auto& bands = doc.at("payload").at("bands");
    REQUIRE(bands.size() == 2);
    for (const auto& row : bands) {
        const auto& cm = row.at("confusion");
        CHECK(cm.at("tp").get<int>() + cm.at("fp").get<int>() + cm.at("fn").get<int>() + cm.at("tn").get<int>() == 1000);
    }
    opts.workers = 3;
    CHECK(render_json(cmd_simulate(offline(), opts)) == a);
}

TEST_CASE("ml reports one row per model and split") {
    NoNetwork net;
    MlOptions opts;
    const auto r = cmd_ml(offline(), opts, net);
    CHECK(r.payload.at("results").size() == 8);
    CHECK(count_lines(r.csv) == 9);

    opts.models = {ml::ModelKind::logreg};
    const auto one = cmd_ml(offline(), opts, net);
    CHECK(one.payload.at("results").size() == 2);

    // raising the threshold never adds predicted positives
    MlOptions hi = opts;
    hi.threshold = 0.9;
    const auto strict = cmd_ml(offline(), hi, net);
    for (std::size_t i = 0; i < 2; ++i) {
        const auto& m5 = one.payload.at("results").at(i).at("metrics");
        const auto& m9 = strict.payload.at("results").at(i).at("metrics");
        CHECK(m9.at("predicted_positive").get<int>() <= m5.at("predicted_positive").get<int>());
        if (m9.at("precision_recession").is_null()) CHECK(m9.at("predicted_positive") == 0);
    }
}

TEST_CASE("ml names the degenerate split") {
    NoNetwork net;
    MlOptions opts;
    opts.train_frac = 0.99;
    try {
        (void)cmd_ml(offline(), opts, net);
        FAIL("expected a degenerate dataset error");
    } catch (const DegenerateDatasetError& e) {
        CHECK(std::string(e.what()).find("test split") != std::string::npos);
    }
}

TEST_CASE("missing data surfaces as a data error") {
    NoNetwork net;
    auto c = offline();
    c.data_dir = std::filesystem::temp_directory_path() / "erule-definitely-missing";
    try {
        (void)cmd_compute(c, {}, net);
        FAIL("expected not found");
    } catch (const Error& e) {
        CHECK(e.category() == ErrorCategory::data);
    }
}
