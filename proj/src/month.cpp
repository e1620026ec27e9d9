#include "erule/month.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace erule {

MonthDate::MonthDate(int year, int month) : year_(year), month_(month) {
    if (month < 1 || month > 12) {
        throw std::invalid_argument("month out of range: " + std::to_string(month));
    }
}

MonthDate MonthDate::from_ordinal(std::int64_t ordinal) {
    std::int64_t year = ordinal / 12;
    std::int64_t rem = ordinal % 12;
    if (rem < 0) {
        rem += 12;
        --year;
    }
    return {static_cast<int>(year), static_cast<int>(rem) + 1};
}

MonthDate MonthDate::parse(std::string_view text) {
    auto fail = [&] { return std::invalid_argument("expected YYYY-MM, got '" + std::string(text) + "'"); };
    if (text.size() != 7 || text[4] != '-') throw fail();
    int year = 0;
    int month = 0;
    auto [p1, e1] = std::from_chars(text.data(), text.data() + 4, year);
    auto [p2, e2] = std::from_chars(text.data() + 5, text.data() + 7, month);
    if (e1 != std::errc{} || p1 != text.data() + 4 || e2 != std::errc{} || p2 != text.data() + 7) {
        throw fail();
    }
    if (month < 1 || month > 12) throw fail();
    return {year, month};
}

std::string MonthDate::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d", year_, month_);
    return buf;
}

}  // namespace erule
