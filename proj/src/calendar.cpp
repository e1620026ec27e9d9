#include "erule/calendar.hpp"

#include <algorithm>

#include "erule/errors.hpp"

namespace erule {

RecessionCalendar::RecessionCalendar(std::vector<RecessionInterval> intervals) : intervals_(std::move(intervals)) {
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
        const auto& iv = intervals_[i];
        if (iv.end < iv.start) {
            throw ValidationError("recession interval ends before it starts: " + iv.start.to_string() + ".." +
                                  iv.end.to_string());
        }
        if (i > 0 && !(intervals_[i - 1].end < iv.start)) {
            throw ValidationError("recession intervals unsorted or overlapping at " + iv.start.to_string());
        }
    }
}

bool RecessionCalendar::contains(const MonthDate& month) const noexcept {
    auto it = std::upper_bound(intervals_.begin(), intervals_.end(), month,
                               [](const MonthDate& m, const RecessionInterval& iv) { return m < iv.start; });
    if (it == intervals_.begin()) return false;
    --it;
    return !(it->end < month);
}

}  // namespace erule
