#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "erule/series.hpp"
#include "test_helpers.hpp"

using namespace erule;
using erule::testing::make_series;
using Catch::Approx;

TEST_CASE("MonthDate parses, formats and steps across years") {
    const auto d = MonthDate::parse("1999-11");
    CHECK(d.year() == 1999);
    CHECK(d.month() == 11);
    CHECK(d.plus(3).to_string() == "2000-02");
    CHECK(d.plus(-11).to_string() == "1998-12");
    CHECK(months_between(MonthDate(2007, 8), MonthDate(2007, 12)) == 4);
    CHECK_THROWS_AS(MonthDate(2020, 13), std::invalid_argument);
    CHECK_THROWS_AS(MonthDate::parse("2020/01"), std::invalid_argument);
}

TEST_CASE("MonthlySeries rejects unsorted dates and non-finite values") {
    CHECK_THROWS(MonthlySeries("X", Unit::percent, {{MonthDate(2000, 2), 1.0}, {MonthDate(2000, 1), 1.0}}));
    CHECK_THROWS(MonthlySeries("X", Unit::percent, {{MonthDate(2000, 1), 1.0}, {MonthDate(2000, 1), 1.0}}));
    CHECK_THROWS(MonthlySeries("X", Unit::percent, {{MonthDate(2000, 1), std::nan("")}}));
}

TEST_CASE("rolling_mean examples") {
    SECTION("constant series") {
        auto r = rolling_mean(make_series(MonthDate(1990, 1), {4.0, 4.0, 4.0}), 3);
        REQUIRE(r.size() == 1);
        CHECK(r[0].date == MonthDate(1990, 3));
        CHECK(r[0].value == Approx(4.0).margin(1e-9));
    }
    SECTION("arithmetic mean") {
        auto r = rolling_mean(make_series(MonthDate(2000, 1), {1.0, 2.0, 6.0}), 3);
        REQUIRE(r.size() == 1);
        CHECK(r[0].date == MonthDate(2000, 3));
        CHECK(r[0].value == Approx(3.0).margin(1e-9));
    }
    SECTION("a gap suppresses every window containing it") {
        MonthlySeries s("X", Unit::percent,
                        {{MonthDate(1999, 11), 1.0},
                         {MonthDate(1999, 12), 1.0},
                         {MonthDate(2000, 1), 1.0},
                         {MonthDate(2000, 3), 1.0},
                         {MonthDate(2000, 4), 1.0},
                         {MonthDate(2000, 5), 1.0}});
        auto r = rolling_mean(s, 3);
        CHECK_FALSE(r.at(MonthDate(2000, 3)).has_value());
        CHECK_FALSE(r.at(MonthDate(2000, 4)).has_value());
        CHECK(r.at(MonthDate(2000, 1)).has_value());
        CHECK(r.at(MonthDate(2000, 5)).has_value());
    }
    CHECK_THROWS(rolling_mean(make_series(MonthDate(2000, 1), {1.0}), 0));
}

TEST_CASE("rolling_min_lagged examples") {
    SECTION("constant series") {
        auto r = rolling_min_lagged(erule::testing::constant_series(MonthDate(2000, 1), 30, 4.0), 12);
        REQUIRE(r.size() == 18);
        for (const auto& p : r.points()) CHECK(p.value == 4.0);
        CHECK(r[0].date == MonthDate(2001, 1));
    }
    SECTION("minimum placed at d-12") {
        std::vector<double> v(13, 5.0);
        v[0] = 3.5;
        auto r = rolling_min_lagged(make_series(MonthDate(2000, 1), v), 12);
        REQUIRE(r.size() == 1);
        CHECK(r[0].date == MonthDate(2001, 1));
        CHECK(r[0].value == 3.5);
    }
    SECTION("monotone rise returns the value 12 months back") {
        std::vector<double> v;
        for (int i = 0; i < 40; ++i) v.push_back(4.0 + 0.1 * i);
        const auto s = make_series(MonthDate(2000, 1), v);
        auto r = rolling_min_lagged(s, 12);
        for (const auto& p : r.points()) CHECK(p.value == Approx(*s.at(p.date.plus(-12))).margin(1e-9));
    }
}

TEST_CASE("align examples") {
    std::vector<double> a(132, 1.0), b(132, 2.0);
    auto sa = make_series(MonthDate(1990, 1), a);
    auto sb = make_series(MonthDate(1995, 1), b);
    auto [x, y] = align(sa, sb);
    REQUIRE(x.size() == y.size());
    CHECK(x[0].date == MonthDate(1995, 1));
    CHECK(x.points().back().date == MonthDate(2000, 12));

    auto [p, q] = align(sa, sa);
    CHECK(p == sa);
    CHECK(q == sa);

    auto [e1, e2] = align(make_series(MonthDate(1990, 1), {1, 2}), make_series(MonthDate(2000, 1), {1, 2}));
    CHECK(e1.empty());
    CHECK(e2.empty());
}

TEST_CASE("series-core properties on random inputs") {
    std::mt19937_64 rng(7);
    std::bernoulli_distribution drop(0.08);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<SeriesPoint> pts;
        auto walk = erule::testing::random_walk(rng, 80, 5.0, 0.3);
        for (std::size_t i = 0; i < walk.size(); ++i) {
            if (!drop(rng)) pts.push_back({MonthDate(1990, 1).plus(static_cast<std::int64_t>(i)), walk[i]});
        }
        MonthlySeries s("R", Unit::percent, pts);

        // window 1 is the identity
        CHECK(rolling_mean(s, 1).points().size() == s.size());
        for (std::size_t i = 0; i < s.size(); ++i) CHECK(rolling_mean(s, 1)[i] == s[i]);

        // window means are bounded by the window and windows never span gaps
        const int w = 1 + trial % 5;
        auto m = rolling_mean(s, w);
        for (const auto& p : m.points()) {
            double lo = 1e300, hi = -1e300;
            for (int k = 0; k < w; ++k) {
                auto v = s.at(p.date.plus(-k));
                REQUIRE(v.has_value());
                lo = std::min(lo, *v);
                hi = std::max(hi, *v);
            }
            CHECK(p.value >= lo - 1e-12);
            CHECK(p.value <= hi + 1e-12);
        }

        // lagged minimum never exceeds any value in the lookback window
        auto mn = rolling_min_lagged(s, 12);
        for (const auto& p : mn.points()) {
            for (int k = 1; k <= 12; ++k) {
                auto v = s.at(p.date.plus(-k));
                REQUIRE(v.has_value());
                CHECK(p.value <= *v);
            }
        }

        // align is idempotent and pure
        auto other = make_series(MonthDate(1992, 6), erule::testing::random_walk(rng, 50, 1.0, 0.1));
        auto [a1, b1] = align(s, other);
        auto [a2, b2] = align(a1, b1);
        CHECK(a1 == a2);
        CHECK(b1 == b2);
        CHECK(rolling_mean(s, w) == m);
    }
}
