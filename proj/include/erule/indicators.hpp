#pragma once

#include <string_view>

#include "erule/series.hpp"

namespace erule {

/// How the spread and the Sahm reading combine into the E-Rule.
///
/// `difference` (spread - sahm) is the default: it reproduces the published
/// case-study readings (for example 0.24 in 2001-02 and 2020-01). `sum`
/// (spread + sahm) is the reading in which an inverted curve and a Sahm
/// trigger cancel to zero. Both are kept selectable because the composite
/// was never written down as an equation.
enum class ERuleForm { difference, sum };

[[nodiscard]] std::string_view to_string(ERuleForm form) noexcept;
/// Accepts "difference" or "sum"; throws std::invalid_argument otherwise.
[[nodiscard]] ERuleForm parse_erule_form(std::string_view text);

inline constexpr int kSahmAverageWindow = 3;
inline constexpr int kSahmLookback = 12;
inline constexpr double kSahmTrigger = 0.5;

/// 3-month average unemployment minus its minimum over the previous 12
/// months (current month excluded). Needs 15 consecutive months per output.
[[nodiscard]] MonthlySeries sahm_rule(const MonthlySeries& unemployment);

/// 10Y - 2Y on the common dates, in percentage points.
[[nodiscard]] MonthlySeries yield_spread(const MonthlySeries& t10, const MonthlySeries& t2);

[[nodiscard]] MonthlySeries e_rule(const MonthlySeries& spread, const MonthlySeries& sahm,
                                   ERuleForm form = ERuleForm::difference);

/// Spread, Sahm and E-Rule on one shared date set.
struct IndicatorBundle {
    MonthlySeries spread;
    MonthlySeries sahm;
    MonthlySeries e_rule;
    ERuleForm form = ERuleForm::difference;

    [[nodiscard]] bool empty() const noexcept { return e_rule.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return e_rule.size(); }
};

[[nodiscard]] IndicatorBundle build_bundle(const MonthlySeries& unemployment, const MonthlySeries& t10,
                                           const MonthlySeries& t2, ERuleForm form = ERuleForm::difference);

/// Bundle from an already-built spread and Sahm series (e.g. a daily spread
/// aggregated to months, or a published Sahm series).
[[nodiscard]] IndicatorBundle bundle_from_components(const MonthlySeries& spread, const MonthlySeries& sahm,
                                                     ERuleForm form = ERuleForm::difference);

}  // namespace erule

namespace erule {

struct SahmComparison {
    std::size_t overlap = 0;
    std::size_t within_tolerance = 0;
    double max_abs_diff = 0.0;
    double tolerance = 0.05;

    [[nodiscard]] double fraction_within() const noexcept {
        return overlap == 0 ? 0.0 : static_cast<double>(within_tolerance) / static_cast<double>(overlap);
    }
};

/// Month-by-month agreement of a recomputed Sahm series with a published one.
[[nodiscard]] SahmComparison compare_sahm(const MonthlySeries& computed, const MonthlySeries& published,
                                          double tolerance = 0.05);

}  // namespace erule
