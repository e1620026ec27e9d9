#include "erule/signal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace erule {

Band::Band(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > 0.0 || hi < 0.0) {
        throw std::invalid_argument("band must satisfy lo <= 0 <= hi, got [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]");
    }
}

std::string_view to_string(SignalKind kind) noexcept {
    switch (kind) {
        case SignalKind::band_entry_from_below: return "band_entry_from_below";
        case SignalKind::zero_cross_up: return "zero_cross_up";
        case SignalKind::zero_cross_down: return "zero_cross_down";
    }
    return "unknown";
}

std::string_view to_string(Phase phase) noexcept {
    switch (phase) {
        case Phase::early_warning: return "early_warning";
        case Phase::cracks_appear: return "cracks_appear";
        case Phase::recession_confirmed: return "recession_confirmed";
        case Phase::recovery: return "recovery";
        case Phase::neutral: return "neutral";
    }
    return "unknown";
}

std::vector<SignalEvent> detect_signals(const MonthlySeries& e, const Band& band) {
    std::vector<SignalEvent> events;
    const auto pts = e.points();
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (months_between(pts[i - 1].date, pts[i].date) != 1) continue;
        const double prev = pts[i - 1].value;
        const double cur = pts[i].value;
        if (prev < band.lo() && band.contains(cur)) {
            events.push_back({pts[i].date, cur, SignalKind::band_entry_from_below});
        }
        if (prev < 0.0 && cur >= 0.0) {
            events.push_back({pts[i].date, cur, SignalKind::zero_cross_up});
        } else if (prev >= 0.0 && cur < 0.0) {
            events.push_back({pts[i].date, cur, SignalKind::zero_cross_down});
        }
    }
    return events;
}

Phase classify_phase(double spread, double sahm, double sahm_prev, const PhaseThresholds& th) {
    if (spread < 0.0) {
        if (sahm < th.cracks) return Phase::early_warning;
        if (sahm < th.trigger) return Phase::cracks_appear;
        return Phase::recession_confirmed;
    }
    if (sahm >= th.trigger && sahm <= sahm_prev) return Phase::recovery;
    return Phase::neutral;
}

}  // namespace erule
