#pragma once

#include <vector>

#include "erule/month.hpp"

namespace erule {

struct RecessionInterval {
    MonthDate start;
    MonthDate end;

    friend bool operator==(const RecessionInterval&, const RecessionInterval&) = default;
};

/// Sorted, disjoint, inclusive month intervals of official recessions.
class RecessionCalendar {
public:
    RecessionCalendar() = default;
    /// Throws ValidationError when an interval is reversed, or intervals are
    /// unsorted or overlap.
    explicit RecessionCalendar(std::vector<RecessionInterval> intervals);

    [[nodiscard]] const std::vector<RecessionInterval>& intervals() const noexcept { return intervals_; }
    [[nodiscard]] std::size_t size() const noexcept { return intervals_.size(); }
    [[nodiscard]] bool empty() const noexcept { return intervals_.empty(); }
    [[nodiscard]] bool contains(const MonthDate& month) const noexcept;

private:
    std::vector<RecessionInterval> intervals_;
};

}  // namespace erule
