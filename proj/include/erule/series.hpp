#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "erule/month.hpp"

namespace erule {

enum class Unit { percent, percentage_points };

[[nodiscard]] std::string_view to_string(Unit unit) noexcept;

struct SeriesPoint {
    MonthDate date;
    double value = 0.0;

    friend bool operator==(const SeriesPoint&, const SeriesPoint&) = default;
};

/// Immutable monthly series. Dates strictly increase and every value is
/// finite; a missing month is simply absent.
class MonthlySeries {
public:
    MonthlySeries() = default;
    /// Throws std::invalid_argument when dates are not strictly increasing
    /// or a value is not finite.
    MonthlySeries(std::string series_id, Unit unit, std::vector<SeriesPoint> points);

    [[nodiscard]] const std::string& series_id() const noexcept { return series_id_; }
    [[nodiscard]] Unit unit() const noexcept { return unit_; }
    [[nodiscard]] std::span<const SeriesPoint> points() const noexcept { return points_; }
    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] bool empty() const noexcept { return points_.empty(); }
    [[nodiscard]] const SeriesPoint& operator[](std::size_t i) const { return points_[i]; }

    [[nodiscard]] std::optional<double> at(const MonthDate& date) const;

    /// Copy restricted to [from, to] (either bound optional).
    [[nodiscard]] MonthlySeries slice(std::optional<MonthDate> from, std::optional<MonthDate> to) const;

    friend bool operator==(const MonthlySeries&, const MonthlySeries&) = default;

private:
    std::string series_id_;
    Unit unit_ = Unit::percent;
    std::vector<SeriesPoint> points_;
};

/// Trailing mean over `window` consecutive months ending at each date.
/// Windows that touch a missing month produce no output.
[[nodiscard]] MonthlySeries rolling_mean(const MonthlySeries& s, int window);

/// Minimum over the `lookback` months strictly before each date of `s`.
/// A date gets an output only when all of those months are present.
[[nodiscard]] MonthlySeries rolling_min_lagged(const MonthlySeries& s, int lookback);

/// Restricts both series to their common dates.
[[nodiscard]] std::pair<MonthlySeries, MonthlySeries> align(const MonthlySeries& a, const MonthlySeries& b);

}  // namespace erule
