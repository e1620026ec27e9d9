#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "erule/confusion.hpp"
#include "erule/indicators.hpp"
#include "erule/signal.hpp"

namespace erule {

/// Two-population scenario generator.
///
/// A recession path follows the four phases: the spread falls from
/// `spread_start` to a random trough while Sahm stays near zero, Sahm creeps
/// up to 0.3 while the curve stays inverted, then over `rise_months` the
/// curve re-steepens as Sahm climbs to a random peak above the 0.5 trigger,
/// and finally both level off. The steepened spread is `spread_recovery`
/// above the Sahm peak. Non-recession paths keep Sahm below 0.5 and the
/// spread wandering (AR(1), floored at zero) around a positive mean. Gaussian `noise_sd` is
/// added to both series every month.
///
/// Defaults for noise_sd, rise_months and spread_recovery come from a grid
/// calibration (tools/calibrate) so that n = 1000 reproduces accuracies of
/// 0.865 at band +-0.2 and 0.927 at band +-0.3.
struct ScenarioParams {
    int horizon_months = 36;
    double recession_fraction = 1.0;
    double spread_start = 1.0;
    double spread_trough_mean = -0.6;
    double spread_trough_sd = 0.25;
    double spread_recovery = 0.5;
    double sahm_peak_mean = 1.0;
    double sahm_peak_sd = 0.3;
    int rise_months = 4;
    double calm_spread_mean = 1.5;
    double calm_spread_sd = 0.5;
    double noise_sd = 0.22;
    std::uint64_t seed = 42;

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;

    friend bool operator==(const ScenarioParams&, const ScenarioParams&) = default;
};

/// `key = value` lines; '#' starts a comment.
[[nodiscard]] std::string serialize_params(const ScenarioParams& params);
/// Keys absent from `text` keep their defaults. Unknown keys or bad values
/// throw std::invalid_argument.
[[nodiscard]] ScenarioParams parse_params(std::string_view text);

struct Scenario {
    MonthlySeries spread;
    MonthlySeries sahm;
    bool truth = false;
};

inline constexpr double kSahmFloor = -0.5;

/// Scenario i draws from a stream seeded by (params.seed, i), so results do
/// not depend on `workers`. The first round(n * recession_fraction)
/// scenarios are recessions.
[[nodiscard]] std::vector<Scenario> generate_scenarios(const ScenarioParams& params, int n, unsigned workers = 1);

/// Predicted positive iff the scenario's E-Rule has at least one band entry
/// from below.
[[nodiscard]] ConfusionMatrix evaluate_band(std::span<const Scenario> scenarios, const Band& band,
                                            ERuleForm form = ERuleForm::difference, unsigned workers = 1);

struct BandSweepRow {
    double half_width = 0.0;
    ConfusionMatrix confusion;
};

struct BandSweep {
    std::vector<BandSweepRow> rows;
    // Accuracy-maximising half width; ties go to the narrower band.
    std::optional<double> best_half_width;
};

/// Half widths must be non-negative and ascending.
[[nodiscard]] BandSweep sweep_bands(std::span<const Scenario> scenarios, std::span<const double> half_widths,
                                    ERuleForm form = ERuleForm::difference, unsigned workers = 1);

/// One row per scenario-month: scenario,date,truth,spread,sahm,e_rule.
[[nodiscard]] std::string scenarios_to_csv(std::span<const Scenario> scenarios,
                                           ERuleForm form = ERuleForm::difference);

}  // namespace erule
