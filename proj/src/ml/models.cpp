#include "erule/ml/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "erule/detail/parallel.hpp"
#include "erule/errors.hpp"

namespace erule::ml {

std::string_view to_string(ModelKind kind) noexcept {
    switch (kind) {
        case ModelKind::logreg: return "logreg";
        case ModelKind::linear_svm: return "linear_svm";
        case ModelKind::gradient_boosting: return "gradient_boosting";
        case ModelKind::random_forest: return "random_forest";
    }
    return "unknown";
}

std::string_view display_name(ModelKind kind) noexcept {
    switch (kind) {
        case ModelKind::logreg: return "Logistic Regression";
        case ModelKind::linear_svm: return "Support Vector Classifier";
        case ModelKind::gradient_boosting: return "Gradient Boosting";
        case ModelKind::random_forest: return "Random Forest";
    }
    return "unknown";
}

ModelKind parse_model_kind(std::string_view text) {
    if (text == "logreg") return ModelKind::logreg;
    if (text == "linear_svm" || text == "svm") return ModelKind::linear_svm;
    if (text == "gradient_boosting" || text == "gboost") return ModelKind::gradient_boosting;
    if (text == "random_forest" || text == "forest") return ModelKind::random_forest;
    throw std::invalid_argument("unknown model '" + std::string(text) + "'");
}

double sigmoid(double z) noexcept {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

namespace {

double dot(std::span<const double> w, std::span<const double> x) {
    double s = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * x[j];
    return s;
}

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

void require_trainable(const Dataset& ds) {
    if (ds.empty()) throw EmptyDatasetError("cannot train on an empty dataset");
    const auto pos = ds.positives();
    if (pos == 0 || pos == ds.rows()) {
        throw DegenerateDatasetError("training data holds a single class (" + std::to_string(pos) + " of " +
                                     std::to_string(ds.rows()) + " rows positive)");
    }
}

}  // namespace

ClassifierModel::ClassifierModel(ModelKind kind, TrainingConfig config, ModelParams params, std::size_t n_features)
    : kind_(kind), config_(std::move(config)), params_(std::move(params)), n_features_(n_features) {}

double ClassifierModel::decision(std::span<const double> x) const {
    if (x.size() != n_features_) throw std::invalid_argument("feature count mismatch");
    if (const auto* lin = std::get_if<LinearParams>(&params_)) return dot(lin->weights, x) + lin->bias;
    if (const auto* boost = std::get_if<BoostParams>(&params_)) {
        const double eta = std::get<BoostConfig>(config_).shrinkage;
        double f = boost->base_score;
        for (const auto& t : boost->trees) f += eta * t.predict(x);
        return f;
    }
    const auto& forest = std::get<ForestParams>(params_);
    if (forest.trees.empty()) return 0.0;
    std::size_t votes = 0;
    for (const auto& t : forest.trees) votes += t.predict(x) >= 0.5 ? 1 : 0;
    return static_cast<double>(votes) / static_cast<double>(forest.trees.size());
}

double ClassifierModel::predict_proba(std::span<const double> x) const {
    const double d = decision(x);
    if (kind_ == ModelKind::random_forest) return d;
    return sigmoid(d);
}

std::vector<double> ClassifierModel::predict_proba(const Dataset& ds) const {
    std::vector<double> out(ds.rows());
    for (std::size_t i = 0; i < ds.rows(); ++i) out[i] = predict_proba(ds.row(i));
    return out;
}

double logistic_loss(const Dataset& ds, std::span<const double> w, double b, double l2) {
    double loss = 0.0;
    for (std::size_t i = 0; i < ds.rows(); ++i) {
        const double z = dot(w, ds.row(i)) + b;
        loss += softplus(z) - ds.labels[i] * z;
    }
    loss /= static_cast<double>(ds.rows());
    return loss + l2 * dot(w, w);
}

Gradient logistic_gradient(const Dataset& ds, std::span<const double> w, double b, double l2) {
    Gradient g{std::vector<double>(ds.cols, 0.0), 0.0};
    const double inv_n = 1.0 / static_cast<double>(ds.rows());
    for (std::size_t i = 0; i < ds.rows(); ++i) {
        const auto x = ds.row(i);
        const double r = sigmoid(dot(w, x) + b) - ds.labels[i];
        for (std::size_t j = 0; j < ds.cols; ++j) g.weights[j] += r * x[j];
        g.bias += r;
    }
    for (std::size_t j = 0; j < ds.cols; ++j) g.weights[j] = g.weights[j] * inv_n + 2.0 * l2 * w[j];
    g.bias *= inv_n;
    return g;
}

double svm_objective(const Dataset& ds, std::span<const double> w, double b, double c) {
    double hinge = 0.0;
    for (std::size_t i = 0; i < ds.rows(); ++i) {
        const double y = ds.labels[i] == 1 ? 1.0 : -1.0;
        hinge += std::max(0.0, 1.0 - y * (dot(w, ds.row(i)) + b));
    }
    return hinge / static_cast<double>(ds.rows()) + dot(w, w) / c;
}

ClassifierModel train_logreg(const Dataset& ds, const LogRegConfig& cfg) {
    require_trainable(ds);
    if (cfg.iters < 0 || !(cfg.lr > 0.0) || cfg.l2 < 0.0) throw std::invalid_argument("invalid logreg config");
    std::vector<double> w(ds.cols, 0.0);
    double b = 0.0;
    for (int it = 0; it < cfg.iters; ++it) {
        const auto g = logistic_gradient(ds, w, b, cfg.l2);
        for (std::size_t j = 0; j < ds.cols; ++j) w[j] -= cfg.lr * g.weights[j];
        b -= cfg.lr * g.bias;
    }
    return {ModelKind::logreg, cfg, LinearParams{std::move(w), b}, ds.cols};
}

ClassifierModel train_linear_svm(const Dataset& ds, const SvmConfig& cfg) {
    require_trainable(ds);
    if (cfg.iters < 0 || !(cfg.c > 0.0) || !(cfg.step0 > 0.0)) throw std::invalid_argument("invalid svm config");
    std::vector<double> w(ds.cols, 0.0);
    double b = 0.0;
    std::vector<double> gw(ds.cols);
    const double inv_n = 1.0 / static_cast<double>(ds.rows());
    for (int it = 0; it < cfg.iters; ++it) {
        std::fill(gw.begin(), gw.end(), 0.0);
        double gb = 0.0;
        for (std::size_t i = 0; i < ds.rows(); ++i) {
            const auto x = ds.row(i);
            const double y = ds.labels[i] == 1 ? 1.0 : -1.0;
            if (y * (dot(w, x) + b) < 1.0) {
                for (std::size_t j = 0; j < ds.cols; ++j) gw[j] -= y * x[j];
                gb -= y;
            }
        }
        const double step = cfg.step0 / std::sqrt(static_cast<double>(it) + 1.0);
        for (std::size_t j = 0; j < ds.cols; ++j) w[j] -= step * (gw[j] * inv_n + 2.0 * w[j] / cfg.c);
        b -= step * gb * inv_n;
    }
    return {ModelKind::linear_svm, cfg, LinearParams{std::move(w), b}, ds.cols};
}

ClassifierModel train_gboost(const Dataset& ds, const BoostConfig& cfg) {
    require_trainable(ds);
    if (cfg.rounds < 0 || cfg.depth < 1 || !(cfg.shrinkage > 0.0)) throw std::invalid_argument("invalid boosting config");
    const double p = static_cast<double>(ds.positives()) / static_cast<double>(ds.rows());
    BoostParams params;
    params.base_score = std::log(p / (1.0 - p));
    std::vector<double> score(ds.rows(), params.base_score);
    std::vector<double> residual(ds.rows());
    std::vector<double> hessian(ds.rows());
    for (int round = 0; round < cfg.rounds; ++round) {
        for (std::size_t i = 0; i < ds.rows(); ++i) {
            const double pi = sigmoid(score[i]);
            residual[i] = ds.labels[i] - pi;
            hessian[i] = pi * (1.0 - pi);
        }
        auto tree = fit_regression_tree(ds, residual, hessian, cfg.depth);
        for (std::size_t i = 0; i < ds.rows(); ++i) score[i] += cfg.shrinkage * tree.predict(ds.row(i));
        params.trees.push_back(std::move(tree));
    }
    return {ModelKind::gradient_boosting, cfg, std::move(params), ds.cols};
}

ClassifierModel train_rforest(const Dataset& ds, const ForestConfig& cfg, unsigned workers) {
    require_trainable(ds);
    if (cfg.trees < 0 || cfg.max_depth < 0 || !(cfg.feature_frac > 0.0 && cfg.feature_frac <= 1.0)) {
        throw std::invalid_argument("invalid forest config");
    }
    ForestParams params;
    params.trees.resize(static_cast<std::size_t>(cfg.trees));
    const ClassificationTreeOptions opts{cfg.max_depth, cfg.feature_frac};
    detail::parallel_for(params.trees.size(), workers, [&](std::size_t t) {
        std::mt19937_64 rng(detail::mix_seed(cfg.seed, t));
        std::vector<std::size_t> sample(ds.rows());
        if (cfg.bootstrap) {
            std::uniform_int_distribution<std::size_t> pick(0, ds.rows() - 1);
            for (auto& s : sample) s = pick(rng);
        } else {
            std::iota(sample.begin(), sample.end(), 0);
        }
        params.trees[t] = fit_classification_tree(ds, sample, opts, rng);
    });
    return {ModelKind::random_forest, cfg, std::move(params), ds.cols};
}

TrainingConfig default_config(ModelKind kind) {
    switch (kind) {
        case ModelKind::logreg: return LogRegConfig{};
        case ModelKind::linear_svm: return SvmConfig{};
        case ModelKind::gradient_boosting: return BoostConfig{};
        case ModelKind::random_forest: return ForestConfig{};
    }
    return LogRegConfig{};
}

ClassifierModel train(ModelKind kind, const Dataset& ds, const TrainingConfig& cfg, unsigned workers) {
    switch (kind) {
        case ModelKind::logreg: return train_logreg(ds, std::get<LogRegConfig>(cfg));
        case ModelKind::linear_svm: return train_linear_svm(ds, std::get<SvmConfig>(cfg));
        case ModelKind::gradient_boosting: return train_gboost(ds, std::get<BoostConfig>(cfg));
        case ModelKind::random_forest: return train_rforest(ds, std::get<ForestConfig>(cfg), workers);
    }
    throw std::invalid_argument("unknown model kind");
}

}  // namespace erule::ml
