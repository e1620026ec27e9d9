#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "erule/calendar.hpp"
#include "erule/indicators.hpp"
#include "erule/ingest.hpp"
#include "erule/ml/models.hpp"

namespace erule {

inline constexpr int kReportSchemaVersion = 1;

enum class OutputFormat { json, csv };
enum class SahmSource { computed, realtime };
enum class SpreadSource { monthly, daily };

struct CommonOptions {
    std::optional<std::filesystem::path> data_dir;
    std::optional<std::filesystem::path> calendar;
    bool offline = false;
    double band = 0.3;
    std::uint64_t seed = 42;
    OutputFormat format = OutputFormat::json;
    ERuleForm form = ERuleForm::difference;
    SahmSource sahm_source = SahmSource::computed;
    SpreadSource spread_source = SpreadSource::monthly;
};

struct ComputeOptions {
    std::optional<MonthDate> from;
    std::optional<MonthDate> to;
};

struct BacktestOptions {
    int max_lead = 24;
};

struct SimulateOptions {
    int n = 1000;
    std::vector<double> bands{0.2, 0.3};
    std::optional<std::filesystem::path> params_file;
    std::optional<std::filesystem::path> export_scenarios;
    unsigned workers = 1;
};

struct MlOptions {
    std::vector<ml::ModelKind> models{ml::ModelKind::logreg, ml::ModelKind::linear_svm,
                                      ml::ModelKind::gradient_boosting, ml::ModelKind::random_forest};
    double threshold = 0.5;
    int lags = 3;
    int horizon = 0;
    double train_frac = 0.7;
    bool include_components = false;
    std::optional<std::filesystem::path> save_models;
    unsigned workers = 1;
};

struct RunReport {
    std::string command;
    std::vector<std::pair<std::string, std::string>> config;
    nlohmann::json payload;
    std::vector<std::string> warnings;
    std::string csv;
};

/// Data directory after --data-dir, E_RULE_DATA_DIR and the bundled default.
[[nodiscard]] SourceConfig source_config(const CommonOptions& common);
[[nodiscard]] RecessionCalendar load_default_calendar(const CommonOptions& common);
/// Loads the inputs named by `common` and builds the indicator bundle.
[[nodiscard]] IndicatorBundle load_bundle(const CommonOptions& common, Transport& transport);

[[nodiscard]] RunReport cmd_compute(const CommonOptions& common, const ComputeOptions& opts, Transport& transport);
[[nodiscard]] RunReport cmd_backtest(const CommonOptions& common, const BacktestOptions& opts, Transport& transport);
[[nodiscard]] RunReport cmd_simulate(const CommonOptions& common, const SimulateOptions& opts);
[[nodiscard]] RunReport cmd_ml(const CommonOptions& common, const MlOptions& opts, Transport& transport);
[[nodiscard]] RunReport cmd_sahm_check(const CommonOptions& common, Transport& transport);

/// Full JSON document: schema_version, command, config, warnings, payload.
[[nodiscard]] std::string render_json(const RunReport& report);
[[nodiscard]] std::string render(const RunReport& report, OutputFormat format);

}  // namespace erule
