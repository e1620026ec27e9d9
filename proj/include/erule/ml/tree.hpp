#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "erule/ml/dataset.hpp"

namespace erule::ml {

/// Internal node when feature >= 0: x[feature] <= threshold goes left.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;

    friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct Tree {
    std::vector<TreeNode> nodes;

    [[nodiscard]] double predict(std::span<const double> x) const;
    friend bool operator==(const Tree&, const Tree&) = default;
};

struct ClassificationTreeOptions {
    int max_depth = 6;
    // Features examined per split: ceil(feature_frac * cols).
    double feature_frac = 1.0;
};

/// Gini tree over the rows listed in `sample` (repeats allowed, as in a
/// bootstrap). Leaves hold the positive fraction. Splits sit on midpoints of
/// sorted unique values; ties go to the lowest feature, then lowest
/// threshold. `rng` is only drawn from when feature_frac < 1.
[[nodiscard]] Tree fit_classification_tree(const Dataset& ds, std::span<const std::size_t> sample,
                                           const ClassificationTreeOptions& options, std::mt19937_64& rng);

/// Least-squares tree on `targets` with Newton leaves sum(target)/sum(hessian),
/// as used for one boosting round on the logistic loss.
[[nodiscard]] Tree fit_regression_tree(const Dataset& ds, std::span<const double> targets,
                                       std::span<const double> hessians, int max_depth);

}  // namespace erule::ml
