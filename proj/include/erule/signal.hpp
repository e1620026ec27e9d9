#pragma once

#include <string_view>
#include <vector>

#include "erule/month.hpp"
#include "erule/series.hpp"

namespace erule {

/// Threshold band [lo, hi] around zero.
class Band {
public:
    /// Throws std::invalid_argument unless lo <= 0 <= hi.
    Band(double lo, double hi);
    static Band symmetric(double half_width) { return {-half_width, half_width}; }

    [[nodiscard]] double lo() const noexcept { return lo_; }
    [[nodiscard]] double hi() const noexcept { return hi_; }
    [[nodiscard]] bool contains(double v) const noexcept { return lo_ <= v && v <= hi_; }

    friend bool operator==(const Band&, const Band&) = default;

private:
    double lo_;
    double hi_;
};

enum class SignalKind { band_entry_from_below, zero_cross_up, zero_cross_down };

[[nodiscard]] std::string_view to_string(SignalKind kind) noexcept;

struct SignalEvent {
    MonthDate date;
    double value = 0.0;
    SignalKind kind = SignalKind::band_entry_from_below;

    friend bool operator==(const SignalEvent&, const SignalEvent&) = default;
};

/// Scans adjacent-month pairs of `e`. Pairs straddling a gap are skipped.
/// Within one month a band entry is listed before a zero crossing.
[[nodiscard]] std::vector<SignalEvent> detect_signals(const MonthlySeries& e, const Band& band);

enum class Phase { early_warning, cracks_appear, recession_confirmed, recovery, neutral };

[[nodiscard]] std::string_view to_string(Phase phase) noexcept;

struct PhaseThresholds {
    // Separates a flat labour market from a slowly rising one.
    double cracks = 0.1;
    double trigger = 0.5;
};

[[nodiscard]] Phase classify_phase(double spread, double sahm, double sahm_prev, const PhaseThresholds& th = {});

}  // namespace erule
