#include "erule/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace erule {

std::string_view to_string(Unit unit) noexcept {
    return unit == Unit::percent ? "percent" : "percentage_points";
}

MonthlySeries::MonthlySeries(std::string series_id, Unit unit, std::vector<SeriesPoint> points)
    : series_id_(std::move(series_id)), unit_(unit), points_(std::move(points)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i].value)) {
            throw std::invalid_argument("non-finite value at " + points_[i].date.to_string() + " in " + series_id_);
        }
        if (i > 0 && !(points_[i - 1].date < points_[i].date)) {
            throw std::invalid_argument("dates not strictly increasing at " + points_[i].date.to_string() +
                                        " in " + series_id_);
        }
    }
}

std::optional<double> MonthlySeries::at(const MonthDate& date) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), date,
                               [](const SeriesPoint& p, const MonthDate& d) { return p.date < d; });
    if (it == points_.end() || it->date != date) return std::nullopt;
    return it->value;
}

MonthlySeries MonthlySeries::slice(std::optional<MonthDate> from, std::optional<MonthDate> to) const {
    std::vector<SeriesPoint> out;
    for (const auto& p : points_) {
        if (from && p.date < *from) continue;
        if (to && *to < p.date) continue;
        out.push_back(p);
    }
    return {series_id_, unit_, std::move(out)};
}

namespace {

// Index i is the end of a gap-free run of `len` points.
bool run_ends_at(std::span<const SeriesPoint> pts, std::size_t i, std::size_t len) {
    if (i + 1 < len) return false;
    return months_between(pts[i + 1 - len].date, pts[i].date) == static_cast<std::int64_t>(len) - 1;
}

}  // namespace

MonthlySeries rolling_mean(const MonthlySeries& s, int window) {
    if (window < 1) throw std::invalid_argument("rolling_mean: window must be >= 1");
    const auto pts = s.points();
    const auto w = static_cast<std::size_t>(window);
    std::vector<SeriesPoint> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!run_ends_at(pts, i, w)) continue;
        double sum = 0.0;
        for (std::size_t k = i + 1 - w; k <= i; ++k) sum += pts[k].value;
        out.push_back({pts[i].date, sum / static_cast<double>(w)});
    }
    return {s.series_id(), s.unit(), std::move(out)};
}

MonthlySeries rolling_min_lagged(const MonthlySeries& s, int lookback) {
    if (lookback < 1) throw std::invalid_argument("rolling_min_lagged: lookback must be >= 1");
    const auto pts = s.points();
    const auto n = static_cast<std::size_t>(lookback);
    std::vector<SeriesPoint> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        // The preceding `lookback` points must be exactly months d-lookback .. d-1.
        if (i < n) continue;
        if (months_between(pts[i - n].date, pts[i].date) != lookback) continue;
        double lo = pts[i - n].value;
        for (std::size_t k = i - n + 1; k < i; ++k) lo = std::min(lo, pts[k].value);
        out.push_back({pts[i].date, lo});
    }
    return {s.series_id(), s.unit(), std::move(out)};
}

std::pair<MonthlySeries, MonthlySeries> align(const MonthlySeries& a, const MonthlySeries& b) {
    std::vector<SeriesPoint> out_a;
    std::vector<SeriesPoint> out_b;
    const auto pa = a.points();
    const auto pb = b.points();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < pa.size() && j < pb.size()) {
        if (pa[i].date < pb[j].date) {
            ++i;
        } else if (pb[j].date < pa[i].date) {
            ++j;
        } else {
            out_a.push_back(pa[i++]);
            out_b.push_back(pb[j++]);
        }
    }
    return {MonthlySeries(a.series_id(), a.unit(), std::move(out_a)),
            MonthlySeries(b.series_id(), b.unit(), std::move(out_b))};
}

}  // namespace erule
