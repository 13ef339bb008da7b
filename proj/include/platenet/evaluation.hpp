#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "platenet/dataset.hpp"
#include "platenet/network.hpp"

namespace platenet {

struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;

    std::size_t total() const { return tp + fp + tn + fn; }
    std::size_t positives() const { return tp + fn; }
    std::size_t negatives() const { return tn + fp; }
};

/// Reliability metrics; a ratio whose denominator is zero is left empty
/// rather than coerced, so degenerate classifiers stay visible in reports.
struct MetricsReport {
    std::optional<double> sensitivity;
    std::optional<double> specificity;
    std::optional<double> ppv;
    std::optional<double> npv;
    std::optional<double> accuracy;
    double mse = 0.0;
};

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
};

struct RocCurve {
    std::vector<RocPoint> points;
    double auc = 0.0;
};

ConfusionMatrix confusion(std::span<const Label> predicted, std::span<const Label> actual);
ConfusionMatrix confusion(std::span<const Prediction> predictions,
                          std::span<const Label> actual);

MetricsReport derive_metrics(const ConfusionMatrix& cm, double mse);

/// Threshold sweep over the distinct positive-class scores, descending; a
/// sample is called Positive when its score >= threshold, equal scores flip
/// together, and the curve is anchored at (0,0) and (1,1). The trapezoidal
/// area equals the concordant-pair fraction with ties counted half.
RocCurve roc(std::span<const double> scores_positive, std::span<const Label> labels);

void write_roc_csv(const std::string& path, const RocCurve& curve);

/// Standalone SVG line plot of the curve over the unit square with a dashed
/// chance diagonal and the area printed in the corner.
void write_roc_svg(const std::string& path, const RocCurve& curve,
                   const std::string& title = "ROC");

}  // namespace platenet
