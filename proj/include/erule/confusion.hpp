#pragma once

#include <cstdint>
#include <optional>

namespace erule {

struct ConfusionMatrix {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;
    std::int64_t tn = 0;

    void add(bool predicted, bool actual) noexcept {
        if (predicted) {
            (actual ? tp : fp) += 1;
        } else {
            (actual ? fn : tn) += 1;
        }
    }

    [[nodiscard]] std::int64_t total() const noexcept { return tp + fp + fn + tn; }

    [[nodiscard]] std::optional<double> accuracy() const noexcept {
        if (total() == 0) return std::nullopt;
        return static_cast<double>(tp + tn) / static_cast<double>(total());
    }
    [[nodiscard]] std::optional<double> precision() const noexcept {
        if (tp + fp == 0) return std::nullopt;
        return static_cast<double>(tp) / static_cast<double>(tp + fp);
    }
    [[nodiscard]] std::optional<double> recall() const noexcept {
        if (tp + fn == 0) return std::nullopt;
        return static_cast<double>(tp) / static_cast<double>(tp + fn);
    }

    ConfusionMatrix& operator+=(const ConfusionMatrix& o) noexcept {
        tp += o.tp;
        fp += o.fp;
        fn += o.fn;
        tn += o.tn;
        return *this;
    }

    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

}  // namespace erule
