// Grid search for ScenarioParams reproducing target band accuracies.
#include <algorithm>
#include <cmath>
#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "erule/simulation.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Calibrate scenario parameters against target accuracies"};
    int n = 1000;
    std::uint64_t seed = 42;
    double target_narrow = 0.865;
    double target_wide = 0.927;
    int top = 10;
    app.add_option("--n", n, "Scenarios per evaluation");
    app.add_option("--seed", seed, "Random seed");
    app.add_option("--target-narrow", target_narrow, "Accuracy target at band +-0.2");
    app.add_option("--target-wide", target_wide, "Accuracy target at band +-0.3");
    app.add_option("--top", top, "Candidates to print");
    CLI11_PARSE(app, argc, argv);

    struct Candidate {
        erule::ScenarioParams params;
        double narrow;
        double wide;
        double loss;
    };
    std::vector<Candidate> results;
    const std::vector<double> widths{0.2, 0.3};

    for (int rise = 3; rise <= 12; ++rise) {
        for (double recovery : {0.5, 1.0, 1.5, 2.0, 3.0}) {
            for (int k = 0; k <= 40; ++k) {
                erule::ScenarioParams p;
                p.seed = seed;
                p.rise_months = rise;
                p.spread_recovery = recovery;
                p.noise_sd = 0.01 * k;
                const auto scenarios = erule::generate_scenarios(p, n);
                const auto sweep = erule::sweep_bands(scenarios, widths);
                const double a = *sweep.rows[0].confusion.accuracy();
                const double b = *sweep.rows[1].confusion.accuracy();
                const bool no_fp = sweep.rows[0].confusion.fp == 0 && sweep.rows[1].confusion.fp == 0;
                if (!no_fp) continue;
                results.push_back({p, a, b, std::pow(a - target_narrow, 2) + std::pow(b - target_wide, 2)});
            }
        }
    }
    std::sort(results.begin(), results.end(), [](const Candidate& x, const Candidate& y) { return x.loss < y.loss; });
    for (int i = 0; i < top && i < static_cast<int>(results.size()); ++i) {
        const auto& c = results[static_cast<std::size_t>(i)];
        std::cout << "rise_months=" << c.params.rise_months << " spread_recovery=" << c.params.spread_recovery
                  << " noise_sd=" << c.params.noise_sd << " acc(0.2)=" << c.narrow << " acc(0.3)=" << c.wide
                  << " loss=" << c.loss << '\n';
    }
}
