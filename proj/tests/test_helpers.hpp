#pragma once

#include <random>
#include <vector>

#include "erule/series.hpp"

namespace erule::testing {

inline MonthlySeries make_series(MonthDate start, const std::vector<double>& values, Unit unit = Unit::percent,
                                 std::string id = "TEST") {
    std::vector<SeriesPoint> pts;
    for (std::size_t i = 0; i < values.size(); ++i) pts.push_back({start.plus(static_cast<std::int64_t>(i)), values[i]});
    return {std::move(id), unit, std::move(pts)};
}

inline MonthlySeries constant_series(MonthDate start, std::size_t n, double v, Unit unit = Unit::percent) {
    return make_series(start, std::vector<double>(n, v), unit);
}

inline std::vector<double> random_walk(std::mt19937_64& rng, std::size_t n, double start, double step) {
    std::normal_distribution<double> d(0.0, step);
    std::vector<double> v(n);
    double x = start;
    for (auto& e : v) {
        x += d(rng);
        e = x;
    }
    return v;
}

}  // namespace erule::testing
