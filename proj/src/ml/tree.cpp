#include "erule/ml/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

namespace erule::ml {

double Tree::predict(std::span<const double> x) const {
    std::size_t i = 0;
    while (nodes[i].feature >= 0) {
        const auto& n = nodes[i];
        i = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right);
    }
    return nodes[i].value;
}

namespace {

struct Split {
    int feature = -1;
    double threshold = 0.0;
    double score = 0.0;
};

// Impurity accumulator: Gini (weighted by count) or sum of squared errors.
struct GiniStats {
    double n = 0.0;
    double pos = 0.0;
    void add(double y) {
        n += 1.0;
        pos += y;
    }
    void remove(double y) {
        n -= 1.0;
        pos -= y;
    }
    [[nodiscard]] double impurity() const {
        if (n <= 0.0) return 0.0;
        const double p = pos / n;
        return n * 2.0 * p * (1.0 - p);
    }
};

struct SseStats {
    double n = 0.0;
    double sum = 0.0;
    double sum_sq = 0.0;
    void add(double y) {
        n += 1.0;
        sum += y;
        sum_sq += y * y;
    }
    void remove(double y) {
        n -= 1.0;
        sum -= y;
        sum_sq -= y * y;
    }
    [[nodiscard]] double impurity() const { return n <= 0.0 ? 0.0 : std::max(0.0, sum_sq - sum * sum / n); }
};

template <typename Stats>
std::optional<Split> best_split(const Dataset& ds, std::span<const std::size_t> rows, std::span<const double> target,
                                std::span<const int> features) {
    Stats parent;
    for (auto r : rows) parent.add(target[r]);
    const double parent_impurity = parent.impurity();
    std::optional<Split> best;
    std::vector<std::size_t> order(rows.begin(), rows.end());
    for (int f : features) {
        const auto fc = static_cast<std::size_t>(f);
        auto value = [&](std::size_t r) { return ds.features[r * ds.cols + fc]; };
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return value(a) < value(b); });
        Stats left;
        Stats right = parent;
        for (std::size_t k = 0; k + 1 < order.size(); ++k) {
            left.add(target[order[k]]);
            right.remove(target[order[k]]);
            const double v = value(order[k]);
            const double next = value(order[k + 1]);
            if (!(v < next)) continue;
            const double score = left.impurity() + right.impurity();
            if (score < parent_impurity - 1e-12 && (!best || score < best->score)) {
                best = Split{f, v + (next - v) / 2.0, score};
            }
        }
    }
    return best;
}

std::vector<int> all_features(std::size_t cols) {
    std::vector<int> f(cols);
    std::iota(f.begin(), f.end(), 0);
    return f;
}

struct ClassificationBuilder {
    const Dataset& ds;
    const ClassificationTreeOptions& options;
    std::mt19937_64& rng;
    std::vector<double> target;
    Tree tree;

    std::vector<int> pick_features() {
        auto f = all_features(ds.cols);
        const auto k = std::clamp<std::size_t>(
            static_cast<std::size_t>(std::ceil(options.feature_frac * static_cast<double>(ds.cols) - 1e-9)), 1,
            ds.cols);
        if (k == ds.cols) return f;
        for (std::size_t i = 0; i < k; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, f.size() - 1);
            std::swap(f[i], f[pick(rng)]);
        }
        f.resize(k);
        std::sort(f.begin(), f.end());
        return f;
    }

    int build(std::vector<std::size_t> rows, int depth) {
        const int index = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        double pos = 0.0;
        for (auto r : rows) pos += target[r];
        tree.nodes[static_cast<std::size_t>(index)].value = rows.empty() ? 0.0 : pos / static_cast<double>(rows.size());
        if (depth >= options.max_depth || rows.size() < 2 || pos == 0.0 || pos == static_cast<double>(rows.size())) {
            return index;
        }
        const auto features = pick_features();
        auto split = best_split<GiniStats>(ds, rows, target, features);
        if (!split) return index;
        std::vector<std::size_t> left;
        std::vector<std::size_t> right;
        for (auto r : rows) {
            (ds.features[r * ds.cols + static_cast<std::size_t>(split->feature)] <= split->threshold ? left : right)
                .push_back(r);
        }
        const int l = build(std::move(left), depth + 1);
        const int r = build(std::move(right), depth + 1);
        auto& node = tree.nodes[static_cast<std::size_t>(index)];
        node.feature = split->feature;
        node.threshold = split->threshold;
        node.left = l;
        node.right = r;
        return index;
    }
};

struct RegressionBuilder {
    const Dataset& ds;
    std::span<const double> target;
    std::span<const double> hessian;
    int max_depth;
    std::vector<int> features;
    Tree tree;

    int build(std::vector<std::size_t> rows, int depth) {
        const int index = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        double g = 0.0;
        double h = 0.0;
        for (auto r : rows) {
            g += target[r];
            h += hessian[r];
        }
        tree.nodes[static_cast<std::size_t>(index)].value = h > 1e-12 ? g / h : 0.0;
        if (depth >= max_depth || rows.size() < 2) return index;
        auto split = best_split<SseStats>(ds, rows, target, features);
        if (!split) return index;
        std::vector<std::size_t> left;
        std::vector<std::size_t> right;
        for (auto r : rows) {
            (ds.features[r * ds.cols + static_cast<std::size_t>(split->feature)] <= split->threshold ? left : right)
                .push_back(r);
        }
        const int l = build(std::move(left), depth + 1);
        const int r = build(std::move(right), depth + 1);
        auto& node = tree.nodes[static_cast<std::size_t>(index)];
        node.feature = split->feature;
        node.threshold = split->threshold;
        node.left = l;
        node.right = r;
        return index;
    }
};

}  // namespace

Tree fit_classification_tree(const Dataset& ds, std::span<const std::size_t> sample,
                             const ClassificationTreeOptions& options, std::mt19937_64& rng) {
    ClassificationBuilder b{ds, options, rng, {}, {}};
    b.target.assign(ds.labels.begin(), ds.labels.end());
    b.build(std::vector<std::size_t>(sample.begin(), sample.end()), 0);
    return std::move(b.tree);
}

Tree fit_regression_tree(const Dataset& ds, std::span<const double> targets, std::span<const double> hessians,
                         int max_depth) {
    RegressionBuilder b{ds, targets, hessians, max_depth, all_features(ds.cols), {}};
    std::vector<std::size_t> rows(ds.rows());
    std::iota(rows.begin(), rows.end(), 0);
    b.build(std::move(rows), 0);
    return std::move(b.tree);
}

}  // namespace erule::ml
