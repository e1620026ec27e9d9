#include "erule/backtest.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace erule {

namespace {

const std::array<ReferenceCase, 6> kReferenceCases{{
    {MonthDate(1980, 1), MonthDate(1979, 7), -0.16, 6, ""},
    {MonthDate(1981, 7), MonthDate(1979, 7), -0.16, 24,
     "reference trigger month and value repeat the 1980 entry; lead is reported as measured"},
    {MonthDate(1990, 7), MonthDate(1990, 6), 0.10, 1, ""},
    {MonthDate(2001, 3), MonthDate(2001, 2), 0.24, 1, ""},
    {MonthDate(2007, 12), MonthDate(2007, 8), 0.26, 4, ""},
    {MonthDate(2020, 2), MonthDate(2020, 1), 0.24, 1, ""},
}};

}  // namespace

std::span<const ReferenceCase> reference_cases() noexcept { return kReferenceCases; }

std::string_view to_string(ValueCheck check) noexcept {
    switch (check) {
        case ValueCheck::pass: return "pass";
        case ValueCheck::pass_vintage: return "pass_vintage";
        case ValueCheck::fail: return "fail";
        case ValueCheck::insufficient_data: return "insufficient_data";
        case ValueCheck::no_reference: return "no_reference";
    }
    return "unknown";
}

std::string_view to_string(MatchStatus status) noexcept {
    return status == MatchStatus::matched ? "matched" : "missed";
}

std::vector<LeadLagReport> match_lead_times(std::span<const SignalEvent> events, const RecessionCalendar& calendar,
                                            int max_lead) {
    if (max_lead < 1) throw std::invalid_argument("max_lead must be >= 1");
    std::vector<bool> used(events.size(), false);
    std::vector<LeadLagReport> reports;
    reports.reserve(calendar.size());
    for (const auto& iv : calendar.intervals()) {
        LeadLagReport rep{iv.start, std::nullopt, std::nullopt, MatchStatus::missed};
        // Latest qualifying event; equal dates resolve to the last one, which
        // is interchangeable with any other at that date.
        std::optional<std::size_t> pick;
        for (std::size_t i = 0; i < events.size(); ++i) {
            const auto& ev = events[i];
            if (used[i] || ev.kind != SignalKind::band_entry_from_below) continue;
            const auto lead = months_between(ev.date, iv.start);
            if (lead < 0) break;
            if (lead <= max_lead) pick = i;
        }
        if (pick) {
            used[*pick] = true;
            rep.matched_signal = events[*pick];
            rep.lead_months = static_cast<int>(months_between(events[*pick].date, iv.start));
            rep.status = MatchStatus::matched;
        }
        reports.push_back(rep);
    }
    return reports;
}

CaseStudyReport case_study_report(const IndicatorBundle& bundle, const RecessionCalendar& calendar,
                                  const Band& band, int max_lead) {
    CaseStudyReport report;
    report.band = band;
    report.max_lead = max_lead;

    const auto events = detect_signals(bundle.e_rule, band);
    const auto leads = match_lead_times(events, calendar, max_lead);

    std::optional<MonthDate> first;
    std::optional<MonthDate> last;
    if (!bundle.e_rule.empty()) {
        first = bundle.e_rule[0].date;
        last = bundle.e_rule[bundle.e_rule.size() - 1].date;
    }

    for (std::size_t k = 0; k < calendar.size(); ++k) {
        const auto& iv = calendar.intervals()[k];
        CaseStudyEntry entry;
        entry.recession = iv;
        entry.lead = leads[k];

        for (const auto& ref : kReferenceCases) {
            if (ref.recession_start == iv.start) entry.reference = ref;
        }
        const bool covers_start = first && !(iv.start < *first) && !(*last < iv.start);

        if (entry.reference) {
            if (!entry.reference->note.empty()) entry.notes.emplace_back(entry.reference->note);
            entry.computed_value = bundle.e_rule.at(entry.reference->trigger);
            if (!entry.computed_value || !covers_start) {
                entry.value_check = ValueCheck::insufficient_data;
            } else {
                const double err = std::abs(*entry.computed_value - entry.reference->value);
                entry.abs_error = err;
                if (err <= kCaseValueTolerance + 1e-12) {
                    entry.value_check = ValueCheck::pass;
                } else if (err <= kCaseVintageTolerance + 1e-12) {
                    entry.value_check = ValueCheck::pass_vintage;
                    entry.notes.emplace_back("outside +-0.10 but within +-0.15; attributed to data vintage");
                } else {
                    entry.value_check = ValueCheck::fail;
                }
            }
        } else if (!covers_start) {
            entry.value_check = ValueCheck::insufficient_data;
        }
        if (!covers_start) entry.notes.emplace_back("insufficient data: series does not cover the recession start");
        report.entries.push_back(std::move(entry));
    }

    for (const auto& ev : events) {
        if (ev.kind != SignalKind::band_entry_from_below) continue;
        const bool claimed = std::any_of(leads.begin(), leads.end(), [&](const LeadLagReport& r) {
            return r.matched_signal && r.matched_signal->date == ev.date;
        });
        if (!claimed) report.unmatched_signals.push_back(ev);
    }
    return report;
}

}  // namespace erule
