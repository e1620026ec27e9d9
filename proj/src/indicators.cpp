#include "erule/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace erule {

std::string_view to_string(ERuleForm form) noexcept {
    return form == ERuleForm::difference ? "difference" : "sum";
}

ERuleForm parse_erule_form(std::string_view text) {
    if (text == "difference") return ERuleForm::difference;
    if (text == "sum") return ERuleForm::sum;
    throw std::invalid_argument("unknown E-Rule form '" + std::string(text) + "' (expected difference|sum)");
}

namespace {

template <typename Op>
MonthlySeries combine(const MonthlySeries& a, const MonthlySeries& b, std::string id, Op op) {
    auto [xa, xb] = align(a, b);
    std::vector<SeriesPoint> out;
    out.reserve(xa.size());
    for (std::size_t i = 0; i < xa.size(); ++i) out.push_back({xa[i].date, op(xa[i].value, xb[i].value)});
    return {std::move(id), Unit::percentage_points, std::move(out)};
}

void require_unit(const MonthlySeries& s, Unit unit, const char* what) {
    if (s.unit() != unit) {
        throw std::invalid_argument(std::string(what) + ": series '" + s.series_id() + "' must be in " +
                                    std::string(to_string(unit)));
    }
}

}  // namespace

MonthlySeries sahm_rule(const MonthlySeries& unemployment) {
    require_unit(unemployment, Unit::percent, "sahm_rule");
    const auto avg = rolling_mean(unemployment, kSahmAverageWindow);
    const auto low = rolling_min_lagged(avg, kSahmLookback);
    return combine(avg, low, "SAHM", [](double cur, double min) { return cur - min; });
}

MonthlySeries yield_spread(const MonthlySeries& t10, const MonthlySeries& t2) {
    require_unit(t10, Unit::percent, "yield_spread");
    require_unit(t2, Unit::percent, "yield_spread");
    return combine(t10, t2, "SPREAD", [](double l, double s) { return l - s; });
}

MonthlySeries e_rule(const MonthlySeries& spread, const MonthlySeries& sahm, ERuleForm form) {
    require_unit(spread, Unit::percentage_points, "e_rule");
    require_unit(sahm, Unit::percentage_points, "e_rule");
    if (form == ERuleForm::sum) {
        return combine(spread, sahm, "ERULE", [](double a, double b) { return a + b; });
    }
    return combine(spread, sahm, "ERULE", [](double a, double b) { return a - b; });
}

IndicatorBundle bundle_from_components(const MonthlySeries& spread, const MonthlySeries& sahm, ERuleForm form) {
    auto [sp, sa] = align(spread, sahm);
    auto e = e_rule(sp, sa, form);
    return {std::move(sp), std::move(sa), std::move(e), form};
}

IndicatorBundle build_bundle(const MonthlySeries& unemployment, const MonthlySeries& t10, const MonthlySeries& t2,
                             ERuleForm form) {
    return bundle_from_components(yield_spread(t10, t2), sahm_rule(unemployment), form);
}

}  // namespace erule

namespace erule {

SahmComparison compare_sahm(const MonthlySeries& computed, const MonthlySeries& published, double tolerance) {
    auto [a, b] = align(computed, published);
    SahmComparison out;
    out.tolerance = tolerance;
    out.overlap = a.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = std::abs(a[i].value - b[i].value);
        out.max_abs_diff = std::max(out.max_abs_diff, d);
        if (d <= tolerance + 1e-12) ++out.within_tolerance;
    }
    return out;
}

}  // namespace erule
