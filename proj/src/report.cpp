#include "erule/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

#include "erule/backtest.hpp"
#include "erule/errors.hpp"
#include "erule/ml/dataset.hpp"
#include "erule/ml/metrics.hpp"
#include "erule/ml/serialize.hpp"
#include "erule/signal.hpp"
#include "erule/simulation.hpp"

#ifndef ERULE_DEFAULT_DATA_DIR
#define ERULE_DEFAULT_DATA_DIR "data/fred"
#endif
#ifndef ERULE_DEFAULT_CALENDAR
#define ERULE_DEFAULT_CALENDAR "data/nber_recessions.csv"
#endif

namespace erule {

using nlohmann::json;

namespace {

std::string num(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, p};
}

std::string fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string opt_csv(const std::optional<double>& v) { return v ? fixed4(*v) : std::string(); }

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string_view to_string(SahmSource s) { return s == SahmSource::computed ? "computed" : "realtime"; }
std::string_view to_string(SpreadSource s) { return s == SpreadSource::monthly ? "monthly" : "daily"; }

std::vector<std::pair<std::string, std::string>> common_echo(const CommonOptions& c) {
    const auto src = source_config(c);
    return {{"data_dir", src.data_dir.string()},
            {"offline", c.offline ? "true" : "false"},
            {"band", num(c.band)},
            {"seed", std::to_string(c.seed)},
            {"form", std::string(to_string(c.form))},
            {"sahm_source", std::string(to_string(c.sahm_source))},
            {"spread_source", std::string(to_string(c.spread_source))}};
}

json confusion_json(const ConfusionMatrix& cm) {
    return {{"tp", cm.tp}, {"fp", cm.fp}, {"fn", cm.fn}, {"tn", cm.tn}};
}

}  // namespace

SourceConfig source_config(const CommonOptions& common) {
    SourceConfig cfg;
    cfg.offline_only = common.offline;
    cfg.data_dir = ERULE_DEFAULT_DATA_DIR;
    cfg = apply_environment(cfg);
    if (common.data_dir) cfg.data_dir = *common.data_dir;
    return cfg;
}

RecessionCalendar load_default_calendar(const CommonOptions& common) {
    return load_calendar(common.calendar ? *common.calendar : std::filesystem::path(ERULE_DEFAULT_CALENDAR));
}

IndicatorBundle load_bundle(const CommonOptions& common, Transport& transport) {
    const auto cfg = source_config(common);
    MonthlySeries spread;
    if (common.spread_source == SpreadSource::daily) {
        spread = load_series("T10Y2Y", cfg, transport);
    } else {
        const auto t10 = load_series("GS10", cfg, transport);
        const auto t2 = load_series("GS2", cfg, transport);
        spread = yield_spread(t10, t2);
    }
    const MonthlySeries sahm = common.sahm_source == SahmSource::realtime
                                   ? load_series("SAHMREALTIME", cfg, transport)
                                   : sahm_rule(load_series("UNRATE", cfg, transport));
    return bundle_from_components(spread, sahm, common.form);
}

RunReport cmd_compute(const CommonOptions& common, const ComputeOptions& opts, Transport& transport) {
    RunReport report;
    report.command = "compute";
    report.config = common_echo(common);
    report.config.emplace_back("from", opts.from ? opts.from->to_string() : "");
    report.config.emplace_back("to", opts.to ? opts.to->to_string() : "");

    const auto full = load_bundle(common, transport);
    const auto e = full.e_rule.slice(opts.from, opts.to);

    json rows = json::array();
    report.csv = "date,spread,sahm,e_rule,phase\n";
    for (std::size_t i = 0; i < e.size(); ++i) {
        const auto date = e[i].date;
        const double spread = *full.spread.at(date);
        const double sahm = *full.sahm.at(date);
        const double prev = full.sahm.at(date.plus(-1)).value_or(sahm);
        const auto phase = classify_phase(spread, sahm, prev);
        rows.push_back({{"date", date.to_string()},
                        {"spread", spread},
                        {"sahm", sahm},
                        {"e_rule", e[i].value},
                        {"phase", std::string(to_string(phase))}});
        report.csv += date.to_string() + "," + fixed4(spread) + "," + fixed4(sahm) + "," + fixed4(e[i].value) + "," +
                      std::string(to_string(phase)) + "\n";
    }
    if (full.empty()) report.warnings.emplace_back("input series do not overlap; bundle is empty");
    if (e.empty()) report.warnings.emplace_back("no observations in the requested date range");
    report.payload = rows;
    return report;
}

RunReport cmd_backtest(const CommonOptions& common, const BacktestOptions& opts, Transport& transport) {
    RunReport report;
    report.command = "backtest";
    report.config = common_echo(common);
    report.config.emplace_back("max_lead", std::to_string(opts.max_lead));

    const auto bundle = load_bundle(common, transport);
    const auto calendar = load_default_calendar(common);
    const auto band = Band::symmetric(common.band);
    const auto cs = case_study_report(bundle, calendar, band, opts.max_lead);

    json entries = json::array();
    report.csv =
        "recession_start,recession_end,reference_month,reference_value,computed_value,abs_error,value_check,"
        "signal_date,signal_value,lead_months,reference_lead,status\n";
    for (const auto& en : cs.entries) {
        json j;
        j["recession_start"] = en.recession.start.to_string();
        j["recession_end"] = en.recession.end.to_string();
        j["reference_month"] = en.reference ? json(en.reference->trigger.to_string()) : json(nullptr);
        j["reference_value"] = en.reference ? json(en.reference->value) : json(nullptr);
        j["reference_lead"] = en.reference ? json(en.reference->lead_months) : json(nullptr);
        j["computed_value"] = opt_json(en.computed_value);
        j["abs_error"] = opt_json(en.abs_error);
        j["value_check"] = std::string(to_string(en.value_check));
        j["signal_date"] = en.lead.matched_signal ? json(en.lead.matched_signal->date.to_string()) : json(nullptr);
        j["signal_value"] = en.lead.matched_signal ? json(en.lead.matched_signal->value) : json(nullptr);
        j["lead_months"] = en.lead.lead_months ? json(*en.lead.lead_months) : json(nullptr);
        j["status"] = std::string(to_string(en.lead.status));
        j["notes"] = en.notes;
        entries.push_back(j);

        report.csv += en.recession.start.to_string() + "," + en.recession.end.to_string() + "," +
                      (en.reference ? en.reference->trigger.to_string() : "") + "," +
                      (en.reference ? fixed4(en.reference->value) : "") + "," + opt_csv(en.computed_value) + "," +
                      opt_csv(en.abs_error) + "," + std::string(to_string(en.value_check)) + "," +
                      (en.lead.matched_signal ? en.lead.matched_signal->date.to_string() : "") + "," +
                      (en.lead.matched_signal ? fixed4(en.lead.matched_signal->value) : "") + "," +
                      (en.lead.lead_months ? std::to_string(*en.lead.lead_months) : "") + "," +
                      (en.reference ? std::to_string(en.reference->lead_months) : "") + "," +
                      std::string(to_string(en.lead.status)) + "\n";
        for (const auto& note : en.notes) report.warnings.push_back(en.recession.start.to_string() + ": " + note);
    }
    json unmatched = json::array();
    for (const auto& ev : cs.unmatched_signals) {
        unmatched.push_back({{"date", ev.date.to_string()}, {"value", ev.value}});
    }
    report.payload = {{"band", {{"lo", band.lo()}, {"hi", band.hi()}}},
                      {"max_lead", opts.max_lead},
                      {"entries", entries},
                      {"unmatched_signals", unmatched}};
    if (bundle.empty()) report.warnings.emplace_back("input series do not overlap; bundle is empty");
    return report;
}

RunReport cmd_simulate(const CommonOptions& common, const SimulateOptions& opts) {
    RunReport report;
    report.command = "simulate";
    report.config = {{"band", num(common.band)},
                     {"seed", std::to_string(common.seed)},
                     {"form", std::string(to_string(common.form))},
                     {"n", std::to_string(opts.n)},
                     {"params_file", opts.params_file ? opts.params_file->string() : ""}};

    ScenarioParams params = opts.params_file ? parse_params(read_file(*opts.params_file)) : ScenarioParams{};
    params.seed = common.seed;
    params.validate();
    auto widths = opts.bands;
    std::sort(widths.begin(), widths.end());
    std::string bands_echo;
    for (double w : widths) bands_echo += (bands_echo.empty() ? "" : ",") + num(w);
    report.config.emplace_back("bands", bands_echo);

    const auto scenarios = generate_scenarios(params, opts.n, opts.workers);
    if (opts.export_scenarios) write_file_atomic(*opts.export_scenarios, scenarios_to_csv(scenarios, common.form));
    const auto sweep = sweep_bands(scenarios, widths, common.form, opts.workers);

    json rows = json::array();
    report.csv = "half_width,tp,fp,fn,tn,accuracy,precision,recall\n";
    for (const auto& row : sweep.rows) {
        const auto& cm = row.confusion;
        rows.push_back({{"half_width", row.half_width},
                        {"confusion", confusion_json(cm)},
                        {"accuracy", opt_json(cm.accuracy())},
                        {"precision", opt_json(cm.precision())},
                        {"recall", opt_json(cm.recall())}});
        report.csv += num(row.half_width) + "," + std::to_string(cm.tp) + "," + std::to_string(cm.fp) + "," +
                      std::to_string(cm.fn) + "," + std::to_string(cm.tn) + "," + opt_csv(cm.accuracy()) + "," +
                      opt_csv(cm.precision()) + "," + opt_csv(cm.recall()) + "\n";
    }
    json pj;
    {
        const auto text = serialize_params(params);
        std::size_t pos = 0;
        while (pos < text.size()) {
            const auto nl = text.find('\n', pos);
            const auto l = text.substr(pos, nl - pos);
            const auto eq = l.find(" = ");
            pj[l.substr(0, eq)] = l.substr(eq + 3);
            pos = nl + 1;
        }
    }
    report.payload = {{"n", opts.n},
                      {"params", pj},
                      {"bands", rows},
                      {"best_half_width", sweep.best_half_width ? json(*sweep.best_half_width) : json(nullptr)}};
    return report;
}

RunReport cmd_ml(const CommonOptions& common, const MlOptions& opts, Transport& transport) {
    RunReport report;
    report.command = "ml";
    report.config = common_echo(common);
    std::string models_echo;
    for (auto k : opts.models) models_echo += (models_echo.empty() ? "" : ",") + std::string(ml::to_string(k));
    report.config.emplace_back("models", models_echo);
    report.config.emplace_back("threshold", num(opts.threshold));
    report.config.emplace_back("lags", std::to_string(opts.lags));
    report.config.emplace_back("horizon", std::to_string(opts.horizon));
    report.config.emplace_back("train_frac", num(opts.train_frac));
    report.config.emplace_back("include_components", opts.include_components ? "true" : "false");

    if (!(opts.threshold >= 0.0 && opts.threshold <= 1.0)) throw std::invalid_argument("threshold must lie in [0, 1]");
    const auto bundle = load_bundle(common, transport);
    const auto calendar = load_default_calendar(common);
    const auto ds = ml::build_dataset(bundle, calendar, {opts.lags, opts.horizon, opts.include_components});
    const auto [train, test] = ml::chrono_split(ds, opts.train_frac);
    for (const auto& [name, part] : {std::pair<const char*, const ml::Dataset*>{"train", &train}, {"test", &test}}) {
        const auto pos = part->positives();
        if (pos == 0 || pos == part->rows()) {
            throw DegenerateDatasetError(std::string(name) + " split holds a single class (" + std::to_string(pos) +
                                         " of " + std::to_string(part->rows()) + " rows positive)");
        }
    }

    std::vector<ml::MetricsRow> rows;
    json models = json::array();
    for (auto kind : opts.models) {
        auto cfg = ml::default_config(kind);
        if (auto* f = std::get_if<ml::ForestConfig>(&cfg)) f->seed = common.seed;
        const auto model = ml::train(kind, train, cfg, opts.workers);
        for (const auto& [split, part] : {std::pair<const char*, const ml::Dataset*>{"train", &train}, {"test", &test}}) {
            auto m = ml::evaluate(model, *part, opts.threshold);
            rows.push_back({std::string(ml::display_name(kind)), split, m});
            models.push_back({{"model", std::string(ml::to_string(kind))},
                              {"split", split},
                              {"metrics", ml::metrics_to_json(m)}});
        }
        if (opts.save_models) {
            std::filesystem::create_directories(*opts.save_models);
            write_file_atomic(*opts.save_models / (std::string(ml::to_string(kind)) + ".json"),
                              ml::model_to_json(model).dump(2) + "\n");
        }
    }

    report.csv = "model,split,accuracy,precision_recession,recall_recession,auc,predicted_positive,tp,fp,fn,tn\n";
    for (const auto& r : rows) {
        const auto& m = r.metrics;
        report.csv += r.model + "," + r.split + "," + opt_csv(m.accuracy) + "," + opt_csv(m.precision) + "," +
                      opt_csv(m.recall) + "," + opt_csv(m.auc) + "," + std::to_string(m.predicted_positive) + "," +
                      std::to_string(m.confusion.tp) + "," + std::to_string(m.confusion.fp) + "," +
                      std::to_string(m.confusion.fn) + "," + std::to_string(m.confusion.tn) + "\n";
        if (!m.precision) report.warnings.push_back(r.model + " (" + r.split + "): no positive predictions; precision undefined");
    }
    report.payload = {{"dataset",
                       {{"rows", ds.rows()},
                        {"train_rows", train.rows()},
                        {"test_rows", test.rows()},
                        {"train_positives", train.positives()},
                        {"test_positives", test.positives()},
                        {"first_month", ds.dates.front().to_string()},
                        {"last_month", ds.dates.back().to_string()},
                        {"features", ds.feature_names}}},
                      {"results", models},
                      {"table", ml::metrics_table(rows)}};
    return report;
}

RunReport cmd_sahm_check(const CommonOptions& common, Transport& transport) {
    RunReport report;
    report.command = "sahm-check";
    report.config = common_echo(common);
    const auto cfg = source_config(common);
    const auto computed = sahm_rule(load_series("UNRATE", cfg, transport));
    const auto published = load_series("SAHMREALTIME", cfg, transport);
    const auto cmp = compare_sahm(computed, published);
    report.payload = {{"overlap", cmp.overlap},
                      {"within_tolerance", cmp.within_tolerance},
                      {"fraction_within", cmp.fraction_within()},
                      {"max_abs_diff", cmp.max_abs_diff},
                      {"tolerance", cmp.tolerance}};
    report.csv = "overlap,within_tolerance,fraction_within,max_abs_diff,tolerance\n" + std::to_string(cmp.overlap) +
                 "," + std::to_string(cmp.within_tolerance) + "," + fixed4(cmp.fraction_within()) + "," +
                 fixed4(cmp.max_abs_diff) + "," + num(cmp.tolerance) + "\n";
    return report;
}

std::string render_json(const RunReport& report) {
    json config = json::object();
    for (const auto& [k, v] : report.config) config[k] = v;
    json doc = {{"schema_version", kReportSchemaVersion},
                {"command", report.command},
                {"config", config},
                {"warnings", report.warnings},
                {"payload", report.payload}};
    return doc.dump(2) + "\n";
}

std::string render(const RunReport& report, OutputFormat format) {
    return format == OutputFormat::json ? render_json(report) : report.csv;
}

}  // namespace erule
