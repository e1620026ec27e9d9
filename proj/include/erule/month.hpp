#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace erule {

/// Calendar month. Ordering is lexicographic on (year, month).
class MonthDate {
public:
    MonthDate() = default;
    MonthDate(int year, int month);

    static MonthDate from_ordinal(std::int64_t ordinal);
    /// Accepts "YYYY-MM"; throws std::invalid_argument otherwise.
    static MonthDate parse(std::string_view text);

    [[nodiscard]] int year() const noexcept { return year_; }
    [[nodiscard]] int month() const noexcept { return month_; }

    /// Months since year 0, January. Differences of ordinals are month counts.
    [[nodiscard]] std::int64_t ordinal() const noexcept {
        return static_cast<std::int64_t>(year_) * 12 + (month_ - 1);
    }

    [[nodiscard]] MonthDate plus(std::int64_t months) const { return from_ordinal(ordinal() + months); }

    [[nodiscard]] std::string to_string() const;

    friend auto operator<=>(const MonthDate&, const MonthDate&) = default;

private:
    int year_ = 1970;
    int month_ = 1;
};

/// Signed number of months from `from` to `to`.
[[nodiscard]] inline std::int64_t months_between(const MonthDate& from, const MonthDate& to) noexcept {
    return to.ordinal() - from.ordinal();
}

}  // namespace erule
