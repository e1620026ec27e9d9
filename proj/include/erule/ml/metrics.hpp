#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "erule/confusion.hpp"
#include "erule/ml/models.hpp"

namespace erule::ml {

/// Metrics for the recession (positive) class. A metric whose denominator
/// is zero is nullopt rather than 0.
struct MetricsReport {
    ConfusionMatrix confusion;
    double threshold = 0.5;
    std::optional<double> accuracy;
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> auc;
    std::int64_t predicted_positive = 0;
};

/// Area under the ROC curve via average ranks (Mann-Whitney U): equals
/// P(score_pos > score_neg) + 0.5 * P(equal). nullopt with a single class.
[[nodiscard]] std::optional<double> auc(std::span<const double> scores, std::span<const int> labels);

/// Hard predictions are score >= threshold.
[[nodiscard]] MetricsReport metrics_from_scores(std::span<const double> scores, std::span<const int> labels,
                                                double threshold = 0.5);

[[nodiscard]] MetricsReport evaluate(const ClassifierModel& model, const Dataset& ds, double threshold = 0.5);

struct MetricsRow {
    std::string model;
    std::string split;
    MetricsReport metrics;
};

/// Fixed-width table: Model, Split, Accuracy, Precision (Recession),
/// Recall (Recession), AUC, Predicted+. Undefined metrics print as "n/a".
[[nodiscard]] std::string metrics_table(std::span<const MetricsRow> rows);

}  // namespace erule::ml
