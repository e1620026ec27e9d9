#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "erule/ml/dataset.hpp"
#include "erule/ml/tree.hpp"

namespace erule::ml {

enum class ModelKind { logreg, linear_svm, gradient_boosting, random_forest };

[[nodiscard]] std::string_view to_string(ModelKind kind) noexcept;
/// Accepts the to_string spellings plus "svm", "gboost", "forest".
[[nodiscard]] ModelKind parse_model_kind(std::string_view text);
/// Row label used in metric tables.
[[nodiscard]] std::string_view display_name(ModelKind kind) noexcept;

struct LogRegConfig {
    double lr = 0.1;
    int iters = 5000;
    double l2 = 1e-4;
    friend bool operator==(const LogRegConfig&, const LogRegConfig&) = default;
};

struct SvmConfig {
    double c = 1.0;
    int iters = 5000;
    // Step at iteration t is step0 / sqrt(t + 1).
    double step0 = 0.1;
    friend bool operator==(const SvmConfig&, const SvmConfig&) = default;
};

struct BoostConfig {
    int rounds = 200;
    int depth = 2;
    double shrinkage = 0.1;
    friend bool operator==(const BoostConfig&, const BoostConfig&) = default;
};

struct ForestConfig {
    int trees = 200;
    int max_depth = 6;
    double feature_frac = 0.7;
    std::uint64_t seed = 42;
    bool bootstrap = true;
    friend bool operator==(const ForestConfig&, const ForestConfig&) = default;
};

using TrainingConfig = std::variant<LogRegConfig, SvmConfig, BoostConfig, ForestConfig>;

struct LinearParams {
    std::vector<double> weights;
    double bias = 0.0;
    friend bool operator==(const LinearParams&, const LinearParams&) = default;
};

struct BoostParams {
    double base_score = 0.0;  // prior log-odds
    std::vector<Tree> trees;  // each added with the configured shrinkage
    friend bool operator==(const BoostParams&, const BoostParams&) = default;
};

struct ForestParams {
    std::vector<Tree> trees;
    friend bool operator==(const ForestParams&, const ForestParams&) = default;
};

using ModelParams = std::variant<LinearParams, BoostParams, ForestParams>;

/// A trained binary classifier. Immutable; predict_proba is in [0, 1].
class ClassifierModel {
public:
    ClassifierModel(ModelKind kind, TrainingConfig config, ModelParams params, std::size_t n_features);

    [[nodiscard]] ModelKind kind() const noexcept { return kind_; }
    [[nodiscard]] const TrainingConfig& config() const noexcept { return config_; }
    [[nodiscard]] const ModelParams& params() const noexcept { return params_; }
    [[nodiscard]] std::size_t n_features() const noexcept { return n_features_; }

    /// Raw score: margin for linear models, log-odds for boosting, vote
    /// share for the forest.
    [[nodiscard]] double decision(std::span<const double> x) const;
    [[nodiscard]] double predict_proba(std::span<const double> x) const;
    [[nodiscard]] std::vector<double> predict_proba(const Dataset& ds) const;

    friend bool operator==(const ClassifierModel&, const ClassifierModel&) = default;

private:
    ModelKind kind_;
    TrainingConfig config_;
    ModelParams params_;
    std::size_t n_features_;
};

[[nodiscard]] double sigmoid(double z) noexcept;

/// Mean logistic loss plus l2 * |w|^2 (bias unpenalised).
[[nodiscard]] double logistic_loss(const Dataset& ds, std::span<const double> w, double b, double l2);

struct Gradient {
    std::vector<double> weights;
    double bias = 0.0;
};

[[nodiscard]] Gradient logistic_gradient(const Dataset& ds, std::span<const double> w, double b, double l2);

/// Mean hinge loss on +-1 labels plus (1/c) * |w|^2.
[[nodiscard]] double svm_objective(const Dataset& ds, std::span<const double> w, double b, double c);

// All trainers throw DegenerateDatasetError unless both classes are present.
[[nodiscard]] ClassifierModel train_logreg(const Dataset& ds, const LogRegConfig& cfg = {});
[[nodiscard]] ClassifierModel train_linear_svm(const Dataset& ds, const SvmConfig& cfg = {});
[[nodiscard]] ClassifierModel train_gboost(const Dataset& ds, const BoostConfig& cfg = {});
/// Tree t uses its own stream seeded by (cfg.seed, t); `workers` only changes
/// wall time.
[[nodiscard]] ClassifierModel train_rforest(const Dataset& ds, const ForestConfig& cfg = {}, unsigned workers = 1);

[[nodiscard]] ClassifierModel train(ModelKind kind, const Dataset& ds, const TrainingConfig& cfg, unsigned workers = 1);
[[nodiscard]] TrainingConfig default_config(ModelKind kind);

}  // namespace erule::ml
