// erule: command-line front end for the E-Rule indicator library.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "erule/errors.hpp"
#include "erule/ingest.hpp"
#include "erule/report.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitComputation = 3;

int exit_code(erule::ErrorCategory c) {
    switch (c) {
        case erule::ErrorCategory::usage: return kExitUsage;
        case erule::ErrorCategory::data: return kExitData;
        case erule::ErrorCategory::computation: return kExitComputation;
    }
    return kExitComputation;
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    erule::write_file_atomic(out, text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"E-Rule recession indicator: compute, backtest, simulate, ml, sahm-check"};
    app.require_subcommand(1);
    app.fallthrough();

    erule::CommonOptions common;
    std::string data_dir, calendar, out, format = "json", form = "difference";
    std::string sahm_source = "computed", spread_source = "monthly";

    app.add_option("--data-dir", data_dir, "Directory holding FRED CSV files (overrides E_RULE_DATA_DIR)");
    app.add_option("--calendar", calendar, "Recession calendar CSV (start,end as YYYY-MM)");
    app.add_flag("--offline", common.offline, "Never fetch; fail when a series is not cached");
    app.add_option("--band", common.band, "Threshold band half-width")->check(CLI::NonNegativeNumber);
    app.add_option("--seed", common.seed, "Random seed");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out, "Output path (default stdout)");
    app.add_option("--form", form, "E-Rule combination")->check(CLI::IsMember({"difference", "sum"}));
    app.add_option("--sahm-source", sahm_source, "Sahm input")->check(CLI::IsMember({"computed", "realtime"}));
    app.add_option("--spread-source", spread_source, "Spread input")->check(CLI::IsMember({"monthly", "daily"}));

    auto* compute = app.add_subcommand("compute", "Emit spread, Sahm, E-Rule and phase per month");
    std::string from, to;
    compute->add_option("--from", from, "First month (YYYY-MM)");
    compute->add_option("--to", to, "Last month (YYYY-MM)");

    auto* backtest = app.add_subcommand("backtest", "Case-study report against the recession calendar");
    erule::BacktestOptions bt;
    backtest->add_option("--max-lead", bt.max_lead, "Longest lead in months")->check(CLI::PositiveNumber);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo threshold-band evaluation");
    erule::SimulateOptions sim;
    std::string params_file, export_path;
    simulate->add_option("--n", sim.n, "Number of scenarios")->check(CLI::PositiveNumber);
    simulate->add_option("--bands", sim.bands, "Band half-widths")->delimiter(',');
    simulate->add_option("--params", params_file, "Scenario parameter file (key = value)");
    simulate->add_option("--export-scenarios", export_path, "Write generated paths as CSV");
    simulate->add_option("--workers", sim.workers, "Worker threads (0 = all cores)");

    auto* ml = app.add_subcommand("ml", "Train and evaluate the four classifiers");
    erule::MlOptions mlo;
    std::vector<std::string> models;
    std::string save_models;
    ml->add_option("--models", models, "Subset of logreg,svm,gboost,forest")->delimiter(',');
    ml->add_option("--threshold", mlo.threshold, "Probability threshold")->check(CLI::Range(0.0, 1.0));
    ml->add_option("--lags", mlo.lags, "Lagged E-Rule features")->check(CLI::NonNegativeNumber);
    ml->add_option("--horizon", mlo.horizon, "Label horizon in months")->check(CLI::NonNegativeNumber);
    ml->add_option("--train-frac", mlo.train_frac, "Chronological training fraction");
    ml->add_flag("--include-components", mlo.include_components, "Add spread and Sahm as features");
    ml->add_option("--save-models", save_models, "Directory for serialized models");
    ml->add_option("--workers", mlo.workers, "Worker threads (0 = all cores)");

    auto* sahm = app.add_subcommand("sahm-check", "Compare computed Sahm rule with SAHMREALTIME");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (!data_dir.empty()) common.data_dir = data_dir;
        if (!calendar.empty()) common.calendar = calendar;
        common.format = format == "csv" ? erule::OutputFormat::csv : erule::OutputFormat::json;
        common.form = erule::parse_erule_form(form);
        common.sahm_source = sahm_source == "realtime" ? erule::SahmSource::realtime : erule::SahmSource::computed;
        common.spread_source = spread_source == "daily" ? erule::SpreadSource::daily : erule::SpreadSource::monthly;

        erule::CurlTransport transport;
        erule::RunReport report;
        if (compute->parsed()) {
            erule::ComputeOptions opts;
            if (!from.empty()) opts.from = erule::MonthDate::parse(from);
            if (!to.empty()) opts.to = erule::MonthDate::parse(to);
            report = erule::cmd_compute(common, opts, transport);
        } else if (backtest->parsed()) {
            report = erule::cmd_backtest(common, bt, transport);
        } else if (simulate->parsed()) {
            if (!params_file.empty()) sim.params_file = params_file;
            if (!export_path.empty()) sim.export_scenarios = export_path;
            report = erule::cmd_simulate(common, sim);
        } else if (ml->parsed()) {
            if (!models.empty()) {
                mlo.models.clear();
                for (const auto& m : models) mlo.models.push_back(erule::ml::parse_model_kind(m));
            }
            if (!save_models.empty()) mlo.save_models = save_models;
            report = erule::cmd_ml(common, mlo, transport);
        } else if (sahm->parsed()) {
            report = erule::cmd_sahm_check(common, transport);
        }
        for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
        emit(erule::render(report, common.format), out);
        return EXIT_SUCCESS;
    } catch (const erule::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.category());
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitComputation;
    }
}
