#include "erule/ml/dataset.hpp"

#include <cmath>
#include <stdexcept>

#include "erule/errors.hpp"

namespace erule::ml {

std::size_t Dataset::positives() const noexcept {
    std::size_t n = 0;
    for (int y : labels) n += y == 1 ? 1 : 0;
    return n;
}

void Dataset::validate() const {
    if (features.size() != labels.size() * cols || dates.size() != labels.size()) {
        throw std::invalid_argument("dataset shape mismatch");
    }
    for (double v : features) {
        if (!std::isfinite(v)) throw std::invalid_argument("dataset contains a non-finite feature");
    }
    for (int y : labels) {
        if (y != 0 && y != 1) throw std::invalid_argument("dataset labels must be 0 or 1");
    }
}

Dataset build_dataset(const MonthlySeries& e, const RecessionCalendar& calendar, int lags, int horizon) {
    IndicatorBundle bundle;
    bundle.e_rule = e;
    return build_dataset(bundle, calendar, DatasetOptions{lags, horizon, false});
}

Dataset build_dataset(const IndicatorBundle& bundle, const RecessionCalendar& calendar,
                      const DatasetOptions& options) {
    if (options.lags < 0 || options.horizon < 0) throw std::invalid_argument("lags and horizon must be >= 0");
    const auto& e = bundle.e_rule;
    Dataset ds;
    ds.cols = static_cast<std::size_t>(options.lags) + 1 + (options.include_components ? 2 : 0);
    for (int k = 0; k <= options.lags; ++k) ds.feature_names.push_back("erule_lag" + std::to_string(k));
    if (options.include_components) {
        ds.feature_names.emplace_back("spread");
        ds.feature_names.emplace_back("sahm");
    }
    if (e.empty()) throw EmptyDatasetError("dataset is empty: no E-Rule observations");

    const auto last = e[e.size() - 1].date;
    const auto lags = static_cast<std::size_t>(options.lags);
    for (std::size_t i = lags; i < e.size(); ++i) {
        const auto date = e[i].date;
        if (months_between(e[i - lags].date, date) != options.lags) continue;
        const auto target = date.plus(options.horizon);
        if (last < target) continue;
        std::vector<double> row;
        for (std::size_t k = 0; k <= lags; ++k) row.push_back(e[i - k].value);
        if (options.include_components) {
            auto sp = bundle.spread.at(date);
            auto sa = bundle.sahm.at(date);
            if (!sp || !sa) continue;
            row.push_back(*sp);
            row.push_back(*sa);
        }
        ds.features.insert(ds.features.end(), row.begin(), row.end());
        ds.labels.push_back(calendar.contains(target) ? 1 : 0);
        ds.dates.push_back(date);
    }
    if (ds.empty()) throw EmptyDatasetError("dataset is empty: series too short for the lag window");
    return ds;
}

Dataset take_rows(const Dataset& ds, std::size_t begin, std::size_t end) {
    Dataset out;
    out.cols = ds.cols;
    out.feature_names = ds.feature_names;
    out.features.assign(ds.features.begin() + static_cast<std::ptrdiff_t>(begin * ds.cols),
                        ds.features.begin() + static_cast<std::ptrdiff_t>(end * ds.cols));
    out.labels.assign(ds.labels.begin() + static_cast<std::ptrdiff_t>(begin),
                      ds.labels.begin() + static_cast<std::ptrdiff_t>(end));
    out.dates.assign(ds.dates.begin() + static_cast<std::ptrdiff_t>(begin),
                     ds.dates.begin() + static_cast<std::ptrdiff_t>(end));
    return out;
}

std::pair<Dataset, Dataset> chrono_split(const Dataset& ds, double train_frac) {
    if (!(train_frac > 0.0 && train_frac < 1.0)) throw std::invalid_argument("train_frac must lie in (0, 1)");
    const auto n = ds.rows();
    const auto cut = static_cast<std::size_t>(std::ceil(train_frac * static_cast<double>(n) - 1e-9));
    if (cut == 0 || cut >= n) {
        throw std::invalid_argument("chronological split leaves an empty side (" + std::to_string(n) + " rows)");
    }
    return {take_rows(ds, 0, cut), take_rows(ds, cut, n)};
}

}  // namespace erule::ml
