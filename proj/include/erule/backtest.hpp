#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "erule/calendar.hpp"
#include "erule/indicators.hpp"
#include "erule/signal.hpp"

namespace erule {

inline constexpr int kDefaultMaxLead = 24;

enum class MatchStatus { matched, missed };

struct LeadLagReport {
    MonthDate recession_start;
    std::optional<SignalEvent> matched_signal;
    // recession_start - signal date; >= 0 means the signal came first.
    std::optional<int> lead_months;
    MatchStatus status = MatchStatus::missed;
};

/// One report per recession. Each recession (earliest start first) takes the
/// latest unused band entry at or before its start and within `max_lead`
/// months. `events` must be sorted by date.
[[nodiscard]] std::vector<LeadLagReport> match_lead_times(std::span<const SignalEvent> events,
                                                          const RecessionCalendar& calendar, int max_lead);

/// Published trigger month, reading and lead for a post-1976 recession.
struct ReferenceCase {
    MonthDate recession_start;
    MonthDate trigger;
    double value;
    int lead_months;
    std::string_view note;
};

[[nodiscard]] std::span<const ReferenceCase> reference_cases() noexcept;

inline constexpr double kCaseValueTolerance = 0.10;
// Wider tolerance for months affected by data revisions since publication.
inline constexpr double kCaseVintageTolerance = 0.15;

enum class ValueCheck { pass, pass_vintage, fail, insufficient_data, no_reference };

[[nodiscard]] std::string_view to_string(ValueCheck check) noexcept;
[[nodiscard]] std::string_view to_string(MatchStatus status) noexcept;

struct CaseStudyEntry {
    RecessionInterval recession;
    std::optional<ReferenceCase> reference;
    std::optional<double> computed_value;  // E-Rule at the reference month
    std::optional<double> abs_error;
    ValueCheck value_check = ValueCheck::no_reference;
    LeadLagReport lead;
    std::vector<std::string> notes;
};

struct CaseStudyReport {
    Band band{-0.3, 0.3};
    int max_lead = kDefaultMaxLead;
    std::vector<CaseStudyEntry> entries;
    // Band entries that no recession claimed.
    std::vector<SignalEvent> unmatched_signals;
};

[[nodiscard]] CaseStudyReport case_study_report(const IndicatorBundle& bundle, const RecessionCalendar& calendar,
                                                const Band& band, int max_lead = kDefaultMaxLead);

}  // namespace erule
