#pragma once

#include <json.hpp>

#include "erule/ml/metrics.hpp"
#include "erule/ml/models.hpp"

namespace erule::ml {

inline constexpr int kModelFormatVersion = 1;

/// {"format_version", "kind", "hyperparameters", "seed", "n_features", "parameters"}.
[[nodiscard]] nlohmann::json model_to_json(const ClassifierModel& model);
/// Throws ValidationError on an unknown version or malformed document.
[[nodiscard]] ClassifierModel model_from_json(const nlohmann::json& doc);

[[nodiscard]] nlohmann::json metrics_to_json(const MetricsReport& report);

}  // namespace erule::ml
