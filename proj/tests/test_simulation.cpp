#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "erule/simulation.hpp"

using namespace erule;

TEST_CASE("noise-free recession scenarios all signal") {
    ScenarioParams p;
    p.noise_sd = 0.0;
    const auto sc = generate_scenarios(p, 200);
    for (double w : {0.2, 0.3}) {
        const auto cm = evaluate_band(sc, Band::symmetric(w));
        CHECK(cm.tp == 200);
        CHECK(cm.fp == 0);
        CHECK(*cm.accuracy() == 1.0);
    }
}

TEST_CASE("noise-free confusion follows the recession fraction") {
    ScenarioParams p;
    p.noise_sd = 0.0;
    p.recession_fraction = 0.4;
    const auto cm = evaluate_band(generate_scenarios(p, 250), Band::symmetric(0.3));
    CHECK(cm.tp == 100);
    CHECK(cm.fp == 0);
    CHECK(cm.tn == 150);
}

TEST_CASE("calm scenarios never reach the Sahm trigger") {
    ScenarioParams p;
    p.recession_fraction = 0.0;
    p.noise_sd = 0.05;
    for (const auto& s : generate_scenarios(p, 300)) {
        CHECK_FALSE(s.truth);
        for (const auto& pt : s.sahm.points()) CHECK(pt.value < 0.5);
    }
}

TEST_CASE("generation is deterministic and independent of worker count") {
    ScenarioParams p;
    p.recession_fraction = 0.5;
    const auto a = generate_scenarios(p, 300, 1);
    const auto b = generate_scenarios(p, 300, 1);
    const auto c = generate_scenarios(p, 300, 4);
    REQUIRE(a.size() == 300);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].spread == b[i].spread);
        CHECK(a[i].sahm == c[i].sahm);
        CHECK(a[i].spread == c[i].spread);
        CHECK(a[i].truth == c[i].truth);
    }
    const std::vector<double> widths{0.1, 0.2, 0.3};
    const auto s1 = sweep_bands(a, widths, ERuleForm::difference, 1);
    const auto s4 = sweep_bands(a, widths, ERuleForm::difference, 3);
    for (std::size_t i = 0; i < widths.size(); ++i) CHECK(s1.rows[i].confusion == s4.rows[i].confusion);
    CHECK(scenarios_to_csv(a) == scenarios_to_csv(c));
}

TEST_CASE("a different seed changes the draw") {
    ScenarioParams p;
    auto q = p;
    q.seed = 43;
    CHECK_FALSE(generate_scenarios(p, 5)[0].spread == generate_scenarios(q, 5)[0].spread);
}

TEST_CASE("sweep_bands shape and counts") {
    ScenarioParams p;
    p.recession_fraction = 0.7;
    const auto sc = generate_scenarios(p, 400);
    const std::vector<double> one{0.25};
    CHECK(sweep_bands(sc, one).rows.size() == 1);
    const std::vector<double> widths{0.0, 0.1, 0.2, 0.3, 0.5};
    const auto sw = sweep_bands(sc, widths);
    REQUIRE(sw.rows.size() == widths.size());
    for (const auto& r : sw.rows) CHECK(r.confusion.total() == 400);
    CHECK(*sw.rows[0].confusion.recall() <= *sw.rows[1].confusion.recall());
    CHECK(sw.best_half_width.has_value());
    const std::vector<double> unsorted{0.3, 0.2};
    CHECK_THROWS(sweep_bands(sc, unsorted));
    const std::vector<double> negative{-0.1};
    CHECK_THROWS(sweep_bands(sc, negative));
}

TEST_CASE("recall is non-decreasing as the upper band bound widens") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::vector<double> his{0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.4, 0.5};
    for (int k = 0; k < 20; ++k) {
        ScenarioParams p;
        p.seed = 1000 + static_cast<std::uint64_t>(k);
        p.noise_sd = 0.4 * u(rng);
        p.rise_months = 2 + static_cast<int>(10 * u(rng));
        p.spread_recovery = 3.0 * u(rng);
        p.sahm_peak_mean = 0.6 + 1.2 * u(rng);
        p.spread_trough_mean = -1.5 + u(rng);
        p.recession_fraction = 0.5 + 0.5 * u(rng);
        const double lo = -0.4 * u(rng);
        const auto sc = generate_scenarios(p, 300);
        INFO("sample " << k);
        double prev = -1.0;
        for (double hi : his) {
            const double r = *evaluate_band(sc, Band(lo, hi)).recall();
            CHECK(prev <= r);
            prev = r;
        }
    }
}

TEST_CASE("symmetric widening can drop a shallow approach") {
    // One noise-free recession whose deepest E-Rule value is about -0.4: the
    // +-0.3 band is entered from below, the +-0.5 band already contains the dip.
    ScenarioParams p;
    p.noise_sd = 0.0;
    p.spread_trough_mean = -0.1;
    p.spread_trough_sd = 0.0;
    const auto sc = generate_scenarios(p, 1);
    CHECK(evaluate_band(sc, Band::symmetric(0.3)).tp == 1);
    CHECK(evaluate_band(sc, Band::symmetric(0.5)).tp == 0);
}

TEST_CASE("params text round trip and validation") {
    ScenarioParams p;
    p.noise_sd = 0.125;
    p.rise_months = 7;
    p.seed = 99;
    CHECK(parse_params(serialize_params(p)) == p);
    CHECK(parse_params("# comment only\n\n") == ScenarioParams{});
    CHECK(parse_params("noise_sd = 0.3  # trailing\n").noise_sd == 0.3);
    CHECK_THROWS_AS(parse_params("bogus = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_params("noise_sd = -1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_params("horizon_months = 6\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_params("noise_sd 0.1\n"), std::invalid_argument);
    CHECK_THROWS(generate_scenarios(p, 0));
}
