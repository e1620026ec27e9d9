#include "erule/simulation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <variant>

#include "erule/detail/parallel.hpp"

namespace erule {

namespace {

constexpr double kCracksSahm = 0.3;
constexpr double kTroughCeiling = -0.1;
constexpr double kTroughFloor = -2.0;
constexpr double kPeakFloor = 0.55;
constexpr double kPeakCeiling = 2.5;
constexpr double kCalmSahmCeiling = 0.45;
constexpr double kCalmPersistence = 0.9;
// Calm paths never invert before noise is added.
constexpr double kCalmSpreadFloor = 0.0;
const MonthDate kBaseMonth{2000, 1};

using Field = std::variant<int ScenarioParams::*, double ScenarioParams::*, std::uint64_t ScenarioParams::*>;

struct FieldSpec {
    std::string_view key;
    Field field;
};

const FieldSpec kFields[] = {
    {"horizon_months", &ScenarioParams::horizon_months},
    {"recession_fraction", &ScenarioParams::recession_fraction},
    {"spread_start", &ScenarioParams::spread_start},
    {"spread_trough_mean", &ScenarioParams::spread_trough_mean},
    {"spread_trough_sd", &ScenarioParams::spread_trough_sd},
    {"spread_recovery", &ScenarioParams::spread_recovery},
    {"sahm_peak_mean", &ScenarioParams::sahm_peak_mean},
    {"sahm_peak_sd", &ScenarioParams::sahm_peak_sd},
    {"rise_months", &ScenarioParams::rise_months},
    {"calm_spread_mean", &ScenarioParams::calm_spread_mean},
    {"calm_spread_sd", &ScenarioParams::calm_spread_sd},
    {"noise_sd", &ScenarioParams::noise_sd},
    {"seed", &ScenarioParams::seed},
};

std::string format_number(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, p};
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
    T v{};
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || p != text.data() + text.size()) {
        throw std::invalid_argument("bad value for " + std::string(key) + ": '" + std::string(text) + "'");
    }
    return v;
}

double lerp(double a, double b, double frac) { return a + (b - a) * frac; }

Scenario make_scenario(const ScenarioParams& p, std::size_t index, bool recession) {
    std::mt19937_64 rng(detail::mix_seed(p.seed, index));
    std::normal_distribution<double> unit_normal(0.0, 1.0);
    const int horizon = p.horizon_months;

    std::vector<double> spread(static_cast<std::size_t>(horizon));
    std::vector<double> sahm(static_cast<std::size_t>(horizon));

    if (recession) {
        const double trough =
            std::clamp(p.spread_trough_mean + p.spread_trough_sd * unit_normal(rng), kTroughFloor, kTroughCeiling);
        const double peak = std::clamp(p.sahm_peak_mean + p.sahm_peak_sd * unit_normal(rng), kPeakFloor, kPeakCeiling);
        const double steep = p.spread_recovery + peak;
        const int t_invert = horizon / 4;
        const int t_turn = horizon / 2;
        const int rise = std::max(1, std::min(p.rise_months, horizon - 1 - t_turn));
        for (int t = 0; t < horizon; ++t) {
            double s = 0.0;
            double u = 0.0;
            if (t <= t_invert) {
                s = lerp(p.spread_start, trough, static_cast<double>(t) / t_invert);
            } else if (t <= t_turn) {
                s = trough;
                u = lerp(0.0, kCracksSahm, static_cast<double>(t - t_invert) / (t_turn - t_invert));
            } else if (t <= t_turn + rise) {
                const double frac = static_cast<double>(t - t_turn) / rise;
                s = lerp(trough, steep, frac);
                u = lerp(kCracksSahm, peak, frac);
            } else {
                s = steep;
                u = peak;
            }
            spread[t] = s;
            sahm[t] = u;
        }
    } else {
        std::uniform_real_distribution<double> base_sahm(0.0, 0.2);
        const double calm_sahm = base_sahm(rng);
        const double innovation = p.calm_spread_sd * std::sqrt(1.0 - kCalmPersistence * kCalmPersistence);
        double dev = p.calm_spread_sd * unit_normal(rng);
        for (int t = 0; t < horizon; ++t) {
            if (t > 0) dev = kCalmPersistence * dev + innovation * unit_normal(rng);
            spread[t] = std::max(kCalmSpreadFloor, p.calm_spread_mean + dev);
            sahm[t] = calm_sahm;
        }
    }

    std::vector<SeriesPoint> sp;
    std::vector<SeriesPoint> sa;
    sp.reserve(spread.size());
    sa.reserve(sahm.size());
    for (int t = 0; t < horizon; ++t) {
        const auto date = kBaseMonth.plus(t);
        // Noise draws are ordered spread then sahm, month by month.
        const double ns = p.noise_sd * unit_normal(rng);
        const double nu = p.noise_sd * unit_normal(rng);
        double u = std::max(kSahmFloor, sahm[t] + nu);
        if (!recession) u = std::min(u, kCalmSahmCeiling);
        sp.push_back({date, spread[t] + ns});
        sa.push_back({date, u});
    }
    return {MonthlySeries("SPREAD", Unit::percentage_points, std::move(sp)),
            MonthlySeries("SAHM", Unit::percentage_points, std::move(sa)), recession};
}

bool predicts_recession(const Scenario& s, const Band& band, ERuleForm form) {
    const auto events = detect_signals(e_rule(s.spread, s.sahm, form), band);
    return std::any_of(events.begin(), events.end(),
                       [](const SignalEvent& ev) { return ev.kind == SignalKind::band_entry_from_below; });
}

}  // namespace

void ScenarioParams::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(std::string("invalid scenario params: ") + what);
    };
    require(horizon_months >= 18, "horizon_months must be >= 18");
    require(recession_fraction >= 0.0 && recession_fraction <= 1.0, "recession_fraction must lie in [0, 1]");
    require(spread_trough_sd >= 0.0 && sahm_peak_sd >= 0.0 && calm_spread_sd >= 0.0 && noise_sd >= 0.0,
            "standard deviations must be >= 0");
    require(rise_months >= 1, "rise_months must be >= 1");
    for (double v : {spread_start, spread_trough_mean, spread_recovery, sahm_peak_mean, calm_spread_mean}) {
        require(std::isfinite(v), "parameters must be finite");
    }
}

std::string serialize_params(const ScenarioParams& params) {
    std::ostringstream out;
    for (const auto& entry : kFields) {
        out << entry.key << " = ";
        std::visit(
            [&](auto member) {
                using T = std::remove_cvref_t<decltype(params.*member)>;
                if constexpr (std::is_same_v<T, double>) {
                    out << format_number(params.*member);
                } else {
                    out << params.*member;
                }
            },
            entry.field);
        out << '\n';
    }
    return out.str();
}

ScenarioParams parse_params(std::string_view text) {
    ScenarioParams params;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos) throw std::invalid_argument("expected key = value: '" + std::string(line) + "'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        auto it = std::find_if(std::begin(kFields), std::end(kFields),
                               [&](const FieldSpec& f) { return f.key == key; });
        if (it == std::end(kFields)) throw std::invalid_argument("unknown scenario parameter '" + std::string(key) + "'");
        std::visit(
            [&](auto member) {
                using T = std::remove_cvref_t<decltype(params.*member)>;
                params.*member = parse_number<T>(key, value);
            },
            it->field);
    }
    params.validate();
    return params;
}

std::vector<Scenario> generate_scenarios(const ScenarioParams& params, int n, unsigned workers) {
    if (n <= 0) throw std::invalid_argument("scenario count must be positive");
    params.validate();
    const auto recessions = static_cast<std::size_t>(std::llround(n * params.recession_fraction));
    std::vector<Scenario> out(static_cast<std::size_t>(n));
    detail::parallel_for(out.size(), workers,
                         [&](std::size_t i) { out[i] = make_scenario(params, i, i < recessions); });
    return out;
}

ConfusionMatrix evaluate_band(std::span<const Scenario> scenarios, const Band& band, ERuleForm form,
                              unsigned workers) {
    if (scenarios.empty()) throw std::invalid_argument("evaluate_band: no scenarios");
    std::vector<char> predicted(scenarios.size());
    detail::parallel_for(scenarios.size(), workers,
                         [&](std::size_t i) { predicted[i] = predicts_recession(scenarios[i], band, form) ? 1 : 0; });
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < scenarios.size(); ++i) cm.add(predicted[i] != 0, scenarios[i].truth);
    return cm;
}

BandSweep sweep_bands(std::span<const Scenario> scenarios, std::span<const double> half_widths, ERuleForm form,
                      unsigned workers) {
    for (std::size_t i = 0; i < half_widths.size(); ++i) {
        if (!(half_widths[i] >= 0.0)) throw std::invalid_argument("band half widths must be >= 0");
        if (i > 0 && half_widths[i] < half_widths[i - 1]) {
            throw std::invalid_argument("band half widths must be sorted ascending");
        }
    }
    BandSweep sweep;
    double best_acc = -1.0;
    for (double h : half_widths) {
        auto cm = evaluate_band(scenarios, Band::symmetric(h), form, workers);
        const double acc = cm.accuracy().value_or(0.0);
        if (acc > best_acc) {
            best_acc = acc;
            sweep.best_half_width = h;
        }
        sweep.rows.push_back({h, cm});
    }
    return sweep;
}

std::string scenarios_to_csv(std::span<const Scenario> scenarios, ERuleForm form) {
    std::string out = "scenario,date,truth,spread,sahm,e_rule\n";
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        const auto& s = scenarios[i];
        const auto e = e_rule(s.spread, s.sahm, form);
        for (std::size_t k = 0; k < e.size(); ++k) {
            out += std::to_string(i) + "," + e[k].date.to_string() + "," + (s.truth ? "1" : "0") + "," +
                   format_number(s.spread[k].value) + "," + format_number(s.sahm[k].value) + "," +
                   format_number(e[k].value) + "\n";
        }
    }
    return out;
}

}  // namespace erule
