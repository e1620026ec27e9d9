#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "erule/backtest.hpp"
#include "erule/errors.hpp"
#include "erule/ingest.hpp"
#include "test_helpers.hpp"

using namespace erule;

namespace {

SignalEvent entry(int y, int m, double v = 0.0) { return {MonthDate(y, m), v, SignalKind::band_entry_from_below}; }

RecessionCalendar one(int y, int m) { return RecessionCalendar({{MonthDate(y, m), MonthDate(y, m).plus(6)}}); }

}  // namespace

TEST_CASE("lead time examples") {
    std::vector<SignalEvent> ev{entry(2007, 8)};
    auto r = match_lead_times(ev, one(2007, 12), 24);
    REQUIRE(r.size() == 1);
    CHECK(r[0].status == MatchStatus::matched);
    CHECK(*r[0].lead_months == 4);

    ev = {entry(1990, 6)};
    CHECK(*match_lead_times(ev, one(1990, 7), 24)[0].lead_months == 1);

    ev = {entry(2020, 2)};
    CHECK(*match_lead_times(ev, one(2020, 2), 24)[0].lead_months == 0);
}

TEST_CASE("lead window and ordering") {
    std::vector<SignalEvent> ev{entry(2000, 1), entry(2000, 6), entry(2001, 1)};
    auto r = match_lead_times(ev, one(2000, 12), 24);
    // latest signal not after the start
    CHECK(r[0].matched_signal->date == MonthDate(2000, 6));
    CHECK(*r[0].lead_months == 6);
    r = match_lead_times(ev, one(2000, 12), 3);
    CHECK(r[0].status == MatchStatus::missed);
    CHECK_FALSE(r[0].lead_months.has_value());
}

TEST_CASE("a signal is used once; earlier recessions claim first") {
    std::vector<SignalEvent> ev{entry(1979, 7)};
    RecessionCalendar cal({{MonthDate(1980, 1), MonthDate(1980, 7)}, {MonthDate(1981, 7), MonthDate(1982, 11)}});
    auto r = match_lead_times(ev, cal, 24);
    CHECK(r[0].status == MatchStatus::matched);
    CHECK(r[1].status == MatchStatus::missed);
}

TEST_CASE("zero crossings are ignored by lead matching") {
    std::vector<SignalEvent> ev{{MonthDate(2007, 9), 0.1, SignalKind::zero_cross_up}};
    CHECK(match_lead_times(ev, one(2007, 12), 24)[0].status == MatchStatus::missed);
}

TEST_CASE("lead matching properties on random inputs") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> month(0, 400);
    std::uniform_int_distribution<int> lead(1, 30);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<RecessionInterval> ivs;
        MonthDate cur(1970, 1);
        for (int k = 0; k < 5; ++k) {
            cur = cur.plus(12 + month(rng) % 60);
            ivs.push_back({cur, cur.plus(6)});
            cur = cur.plus(7);
        }
        RecessionCalendar cal(ivs);
        std::vector<SignalEvent> ev;
        for (int k = 0; k < 12; ++k) ev.push_back(entry(1970, 1));
        for (auto& e : ev) e.date = MonthDate(1970, 1).plus(month(rng));
        // duplicate dates to exercise tie handling
        ev.push_back(ev.front());
        std::sort(ev.begin(), ev.end(), [](auto& a, auto& b) { return a.date < b.date; });
        const int max_lead = lead(rng);

        auto r = match_lead_times(ev, cal, max_lead);
        REQUIRE(r.size() == cal.size());
        std::vector<std::pair<MonthDate, int>> pairs;
        for (std::size_t i = 0; i < r.size(); ++i) {
            CHECK(r[i].recession_start == ivs[i].start);
            if (r[i].status != MatchStatus::matched) continue;
            CHECK(r[i].matched_signal->date <= r[i].recession_start);
            CHECK(*r[i].lead_months <= max_lead);
            CHECK(*r[i].lead_months >= 0);
            pairs.emplace_back(r[i].recession_start, *r[i].lead_months);
        }
        // permuting equal-date events leaves the matched pairs unchanged
        auto shuffled = ev;
        std::stable_sort(shuffled.begin(), shuffled.end(), [](auto& a, auto& b) { return a.date < b.date; });
        std::reverse(shuffled.begin(), shuffled.end());
        std::stable_sort(shuffled.begin(), shuffled.end(), [](auto& a, auto& b) { return a.date < b.date; });
        auto r2 = match_lead_times(shuffled, cal, max_lead);
        std::vector<std::pair<MonthDate, int>> pairs2;
        for (const auto& x : r2) {
            if (x.status == MatchStatus::matched) pairs2.emplace_back(x.recession_start, *x.lead_months);
        }
        CHECK(pairs == pairs2);
    }
}

TEST_CASE("reference table holds the six cited cases") {
    const auto refs = reference_cases();
    REQUIRE(refs.size() == 6);
    CHECK(refs[4].trigger == MonthDate(2007, 8));
    CHECK(refs[4].value == 0.26);
    CHECK(refs[4].lead_months == 4);
    CHECK_FALSE(refs[1].note.empty());
}

TEST_CASE("case_study_report on a synthetic bundle") {
    // spread dips, crosses into the band in 2007-08, then the calendar starts in 2007-12
    std::vector<double> spread, sahm;
    for (int i = 0; i < 60; ++i) {
        spread.push_back(i < 29 ? -1.0 : 1.0);
        sahm.push_back(i < 29 ? 0.0 : 0.8);
    }
    const MonthDate start(2005, 3);
    auto b = bundle_from_components(erule::testing::make_series(start, spread, Unit::percentage_points),
                                    erule::testing::make_series(start, sahm, Unit::percentage_points));
    // month 29 (2007-08) flips to 0.2 in difference form
    RecessionCalendar cal({{MonthDate(2007, 12), MonthDate(2009, 6)}, {MonthDate(2020, 2), MonthDate(2020, 4)}});
    auto rep = case_study_report(b, cal, Band::symmetric(0.3));
    REQUIRE(rep.entries.size() == 2);
    CHECK(rep.entries[0].lead.status == MatchStatus::matched);
    CHECK(*rep.entries[0].lead.lead_months == 4);
    CHECK(rep.entries[0].computed_value.has_value());
    CHECK(rep.entries[1].value_check == ValueCheck::insufficient_data);
    CHECK(rep.entries[1].lead.status == MatchStatus::missed);
}

TEST_CASE("calendar validation") {
    CHECK_THROWS_AS(RecessionCalendar({{MonthDate(1990, 7), MonthDate(1990, 1)}}), ValidationError);
    CHECK_THROWS_AS(RecessionCalendar({{MonthDate(2001, 3), MonthDate(2001, 11)}, {MonthDate(1990, 7), MonthDate(1991, 3)}}),
                    ValidationError);
    CHECK_THROWS_AS(RecessionCalendar({{MonthDate(2001, 3), MonthDate(2001, 11)}, {MonthDate(2001, 11), MonthDate(2002, 3)}}),
                    ValidationError);
    RecessionCalendar cal({{MonthDate(2001, 3), MonthDate(2001, 11)}});
    CHECK(cal.contains(MonthDate(2001, 3)));
    CHECK(cal.contains(MonthDate(2001, 11)));
    CHECK_FALSE(cal.contains(MonthDate(2001, 12)));
    CHECK_FALSE(cal.contains(MonthDate(2001, 2)));
}

TEST_CASE("calendar files") {
    CHECK(parse_calendar("start,end\n1990-07,1991-03\n").size() == 1);
    CHECK_THROWS_AS(parse_calendar("start,end\n2001-03,2001-11\n1990-07,1991-03\n"), ValidationError);
    CHECK_THROWS_AS(parse_calendar("from,to\n1990-07,1991-03\n"), ParseError);
    const auto cal = load_calendar(ERULE_TEST_DATA_DIR "/nber_recessions.csv");
    REQUIRE(cal.size() == 6);
    CHECK(cal.intervals()[0].start == MonthDate(1980, 1));
    CHECK(cal.intervals()[0].end == MonthDate(1980, 7));
    CHECK(parse_calendar(serialize_calendar(cal)).intervals() == cal.intervals());
}
