#include "erule/ml/serialize.hpp"

#include <string>

#include "erule/errors.hpp"

namespace erule::ml {

using nlohmann::json;

namespace {

json tree_to_json(const Tree& tree) {
    json nodes = json::array();
    for (const auto& n : tree.nodes) {
        if (n.feature < 0) {
            nodes.push_back({{"value", n.value}});
        } else {
            nodes.push_back({{"feature", n.feature},
                             {"threshold", n.threshold},
                             {"left", n.left},
                             {"right", n.right},
                             {"value", n.value}});
        }
    }
    return nodes;
}

Tree tree_from_json(const json& nodes) {
    Tree tree;
    for (const auto& n : nodes) {
        TreeNode node;
        node.value = n.at("value").get<double>();
        if (n.contains("feature")) {
            node.feature = n.at("feature").get<int>();
            node.threshold = n.at("threshold").get<double>();
            node.left = n.at("left").get<int>();
            node.right = n.at("right").get<int>();
        }
        tree.nodes.push_back(node);
    }
    const auto size = static_cast<int>(tree.nodes.size());
    if (size == 0) throw ValidationError("model document holds an empty tree");
    for (const auto& n : tree.nodes) {
        if (n.feature >= 0 && (n.left <= 0 || n.left >= size || n.right <= 0 || n.right >= size)) {
            throw ValidationError("model document holds a tree with dangling child index");
        }
    }
    return tree;
}

json trees_to_json(const std::vector<Tree>& trees) {
    json arr = json::array();
    for (const auto& t : trees) arr.push_back(tree_to_json(t));
    return arr;
}

std::vector<Tree> trees_from_json(const json& arr) {
    std::vector<Tree> trees;
    for (const auto& t : arr) trees.push_back(tree_from_json(t));
    return trees;
}

json config_to_json(const TrainingConfig& cfg) {
    return std::visit(
        [](const auto& c) -> json {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, LogRegConfig>) {
                return {{"lr", c.lr}, {"iters", c.iters}, {"l2", c.l2}};
            } else if constexpr (std::is_same_v<T, SvmConfig>) {
                return {{"c", c.c}, {"iters", c.iters}, {"step0", c.step0}};
            } else if constexpr (std::is_same_v<T, BoostConfig>) {
                return {{"rounds", c.rounds}, {"depth", c.depth}, {"shrinkage", c.shrinkage}};
            } else {
                return {{"trees", c.trees},
                        {"max_depth", c.max_depth},
                        {"feature_frac", c.feature_frac},
                        {"bootstrap", c.bootstrap}};
            }
        },
        cfg);
}

}  // namespace

json model_to_json(const ClassifierModel& model) {
    json doc;
    doc["format_version"] = kModelFormatVersion;
    doc["kind"] = std::string(to_string(model.kind()));
    doc["hyperparameters"] = config_to_json(model.config());
    if (const auto* f = std::get_if<ForestConfig>(&model.config())) {
        doc["seed"] = f->seed;
    } else {
        doc["seed"] = nullptr;
    }
    doc["n_features"] = model.n_features();
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, LinearParams>) {
                doc["parameters"] = {{"weights", p.weights}, {"bias", p.bias}};
            } else if constexpr (std::is_same_v<T, BoostParams>) {
                doc["parameters"] = {{"base_score", p.base_score}, {"trees", trees_to_json(p.trees)}};
            } else {
                doc["parameters"] = {{"trees", trees_to_json(p.trees)}};
            }
        },
        model.params());
    return doc;
}

ClassifierModel model_from_json(const json& doc) {
    try {
        if (doc.at("format_version").get<int>() != kModelFormatVersion) {
            throw ValidationError("unsupported model format_version " + doc.at("format_version").dump());
        }
        const auto kind = parse_model_kind(doc.at("kind").get<std::string>());
        const auto& h = doc.at("hyperparameters");
        const auto& p = doc.at("parameters");
        const auto n_features = doc.at("n_features").get<std::size_t>();
        switch (kind) {
            case ModelKind::logreg: {
                LogRegConfig c{h.at("lr").get<double>(), h.at("iters").get<int>(), h.at("l2").get<double>()};
                return {kind, c, LinearParams{p.at("weights").get<std::vector<double>>(), p.at("bias").get<double>()},
                        n_features};
            }
            case ModelKind::linear_svm: {
                SvmConfig c{h.at("c").get<double>(), h.at("iters").get<int>(), h.at("step0").get<double>()};
                return {kind, c, LinearParams{p.at("weights").get<std::vector<double>>(), p.at("bias").get<double>()},
                        n_features};
            }
            case ModelKind::gradient_boosting: {
                BoostConfig c{h.at("rounds").get<int>(), h.at("depth").get<int>(), h.at("shrinkage").get<double>()};
                return {kind, c, BoostParams{p.at("base_score").get<double>(), trees_from_json(p.at("trees"))},
                        n_features};
            }
            case ModelKind::random_forest: {
                ForestConfig c{h.at("trees").get<int>(), h.at("max_depth").get<int>(),
                               h.at("feature_frac").get<double>(), doc.at("seed").get<std::uint64_t>(),
                               h.at("bootstrap").get<bool>()};
                return {kind, c, ForestParams{trees_from_json(p.at("trees"))}, n_features};
            }
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed model document: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string("malformed model document: ") + e.what());
    }
    throw ValidationError("malformed model document");
}

json metrics_to_json(const MetricsReport& r) {
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    return {{"threshold", r.threshold},
            {"accuracy", opt(r.accuracy)},
            {"precision_recession", opt(r.precision)},
            {"recall_recession", opt(r.recall)},
            {"auc", opt(r.auc)},
            {"predicted_positive", r.predicted_positive},
            {"confusion", {{"tp", r.confusion.tp}, {"fp", r.confusion.fp}, {"fn", r.confusion.fn}, {"tn", r.confusion.tn}}}};
}

}  // namespace erule::ml
