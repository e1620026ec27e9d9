#include "erule/ml/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace erule::ml {

std::optional<double> auc(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size()) throw std::invalid_argument("auc: scores and labels differ in length");
    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    double rank_sum_pos = 0.0;
    double n_pos = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
        // Ranks i+1 .. j+1 share their average.
        const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) {
            if (labels[order[k]] == 1) {
                rank_sum_pos += avg_rank;
                n_pos += 1.0;
            }
        }
        i = j + 1;
    }
    const double n_neg = static_cast<double>(n) - n_pos;
    if (n_pos == 0.0 || n_neg == 0.0) return std::nullopt;
    const double u = rank_sum_pos - n_pos * (n_pos + 1.0) / 2.0;
    return u / (n_pos * n_neg);
}

MetricsReport metrics_from_scores(std::span<const double> scores, std::span<const int> labels, double threshold) {
    if (scores.size() != labels.size()) throw std::invalid_argument("metrics: scores and labels differ in length");
    if (scores.empty()) throw std::invalid_argument("metrics: empty dataset");
    if (!(threshold >= 0.0 && threshold <= 1.0)) throw std::invalid_argument("threshold must lie in [0, 1]");
    MetricsReport r;
    r.threshold = threshold;
    for (std::size_t i = 0; i < scores.size(); ++i) r.confusion.add(scores[i] >= threshold, labels[i] == 1);
    r.accuracy = r.confusion.accuracy();
    r.precision = r.confusion.precision();
    r.recall = r.confusion.recall();
    r.auc = auc(scores, labels);
    r.predicted_positive = r.confusion.tp + r.confusion.fp;
    return r;
}

MetricsReport evaluate(const ClassifierModel& model, const Dataset& ds, double threshold) {
    const auto scores = model.predict_proba(ds);
    return metrics_from_scores(scores, ds.labels, threshold);
}

std::string metrics_table(std::span<const MetricsRow> rows) {
    auto fmt = [](const std::optional<double>& v) {
        if (!v) return std::string("n/a");
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", *v);
        return std::string(buf);
    };
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-26s %-6s %9s %22s %19s %8s %11s\n", "Model", "Split", "Accuracy",
                  "Precision (Recession)", "Recall (Recession)", "AUC", "Predicted+");
    out += line;
    for (const auto& row : rows) {
        const auto& m = row.metrics;
        std::snprintf(line, sizeof line, "%-26s %-6s %9s %22s %19s %8s %11lld\n", row.model.c_str(),
                      row.split.c_str(), fmt(m.accuracy).c_str(), fmt(m.precision).c_str(), fmt(m.recall).c_str(),
                      fmt(m.auc).c_str(), static_cast<long long>(m.predicted_positive));
        out += line;
    }
    return out;
}

}  // namespace erule::ml
