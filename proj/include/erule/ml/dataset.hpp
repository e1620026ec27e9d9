#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "erule/calendar.hpp"
#include "erule/indicators.hpp"

namespace erule::ml {

/// Row-major feature matrix with one 0/1 label and one month per row.
struct Dataset {
    std::size_t cols = 0;
    std::vector<double> features;
    std::vector<int> labels;
    std::vector<MonthDate> dates;
    std::vector<std::string> feature_names;

    [[nodiscard]] std::size_t rows() const noexcept { return labels.size(); }
    [[nodiscard]] bool empty() const noexcept { return labels.empty(); }
    [[nodiscard]] std::span<const double> row(std::size_t i) const {
        return {features.data() + i * cols, cols};
    }
    [[nodiscard]] std::size_t positives() const noexcept;

    /// Throws std::invalid_argument on shape mismatch, non-finite features or
    /// labels outside {0, 1}.
    void validate() const;
};

struct DatasetOptions {
    int lags = 3;
    int horizon = 0;
    // Adds spread(t) and sahm(t) columns after the E-Rule lags.
    bool include_components = false;
};

/// Row t: [E(t), E(t-1), ..., E(t-lags)], label = recession membership of
/// month t + horizon. Rows needing a month outside the series are dropped.
/// Throws EmptyDatasetError when nothing remains.
[[nodiscard]] Dataset build_dataset(const MonthlySeries& e, const RecessionCalendar& calendar, int lags = 3,
                                    int horizon = 0);
[[nodiscard]] Dataset build_dataset(const IndicatorBundle& bundle, const RecessionCalendar& calendar,
                                    const DatasetOptions& options);

/// First ceil(train_frac * rows) rows train, the rest test. No shuffling.
[[nodiscard]] std::pair<Dataset, Dataset> chrono_split(const Dataset& ds, double train_frac);

/// Rows [begin, end) as a new dataset.
[[nodiscard]] Dataset take_rows(const Dataset& ds, std::size_t begin, std::size_t end);

}  // namespace erule::ml
