#include "platenet/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "platenet/errors.hpp"

namespace platenet {

namespace {

ConfusionMatrix tally(std::size_t n, const std::function<Label(std::size_t)>& predicted,
                      std::span<const Label> actual) {
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < n; ++i) {
        const bool called_positive = predicted(i) == Label::Positive;
        const bool is_positive = actual[i] == Label::Positive;
        if (called_positive && is_positive) ++cm.tp;
        else if (called_positive && !is_positive) ++cm.fp;
        else if (!called_positive && is_positive) ++cm.fn;
        else ++cm.tn;
    }
    return cm;
}

std::optional<double> ratio(std::size_t numerator, std::size_t denominator) {
    if (denominator == 0) return std::nullopt;
    return static_cast<double>(numerator) / static_cast<double>(denominator);
}

void append_number(std::string& out, double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, ptr);
}

}  // namespace

ConfusionMatrix confusion(std::span<const Label> predicted, std::span<const Label> actual) {
    if (predicted.size() != actual.size())
        throw LengthMismatchError(predicted.size(), actual.size());
    if (actual.empty()) throw EmptyInputError("confusion");
    return tally(actual.size(), [&](std::size_t i) { return predicted[i]; }, actual);
}

ConfusionMatrix confusion(std::span<const Prediction> predictions,
                          std::span<const Label> actual) {
    if (predictions.size() != actual.size())
        throw LengthMismatchError(predictions.size(), actual.size());
    if (actual.empty()) throw EmptyInputError("confusion");
    return tally(actual.size(), [&](std::size_t i) { return predictions[i].label; }, actual);
}

MetricsReport derive_metrics(const ConfusionMatrix& cm, double mse) {
    if (cm.total() == 0) throw EmptyInputError("confusion matrix");
    MetricsReport report;
    report.sensitivity = ratio(cm.tp, cm.tp + cm.fn);
    report.specificity = ratio(cm.tn, cm.tn + cm.fp);
    report.ppv = ratio(cm.tp, cm.tp + cm.fp);
    report.npv = ratio(cm.tn, cm.tn + cm.fn);
    report.accuracy = ratio(cm.tp + cm.tn, cm.total());
    report.mse = mse;
    return report;
}

RocCurve roc(std::span<const double> scores_positive, std::span<const Label> labels) {
    if (scores_positive.size() != labels.size())
        throw LengthMismatchError(scores_positive.size(), labels.size());
    if (labels.empty()) throw EmptyInputError("roc");
    std::size_t num_positive = 0;
    for (Label l : labels) num_positive += l == Label::Positive ? 1 : 0;
    const std::size_t num_negative = labels.size() - num_positive;
    if (num_positive == 0 || num_negative == 0) throw SingleClassError();

    std::vector<std::size_t> order(labels.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores_positive[a] > scores_positive[b];
    });

    RocCurve curve;
    curve.points.push_back({0.0, 0.0});
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        const double threshold = scores_positive[order[i]];
        // Every sample scoring exactly `threshold` flips to Positive together.
        while (i < order.size() && scores_positive[order[i]] == threshold) {
            if (labels[order[i]] == Label::Positive) ++tp;
            else ++fp;
            ++i;
        }
        curve.points.push_back({static_cast<double>(fp) / static_cast<double>(num_negative),
                                static_cast<double>(tp) / static_cast<double>(num_positive)});
    }

    double area = 0.0;
    for (std::size_t p = 1; p < curve.points.size(); ++p) {
        const RocPoint& a = curve.points[p - 1];
        const RocPoint& b = curve.points[p];
        area += (b.fpr - a.fpr) * (a.tpr + b.tpr) * 0.5;
    }
    curve.auc = area;
    return curve;
}

void write_roc_csv(const std::string& path, const RocCurve& curve) {
    std::ofstream out(path);
    if (!out) throw IoError(path, "cannot open for writing");
    std::string body = "fpr,tpr\n";
    for (const RocPoint& p : curve.points) {
        append_number(body, p.fpr);
        body += ',';
        append_number(body, p.tpr);
        body += '\n';
    }
    out << body;
    if (!out) throw IoError(path, "write failed");
}

void write_roc_svg(const std::string& path, const RocCurve& curve, const std::string& title) {
    constexpr double kPlot = 440.0;
    constexpr double kMargin = 60.0;
    constexpr double kSize = kPlot + 2.0 * kMargin;
    const auto px = [&](double fpr) { return kMargin + fpr * kPlot; };
    const auto py = [&](double tpr) { return kMargin + (1.0 - tpr) * kPlot; };
    char buf[160];

    std::string svg;
    svg.reserve(4096);
    std::snprintf(buf, sizeof(buf),
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                  "viewBox=\"0 0 %.0f %.0f\">\n",
                  kSize, kSize, kSize, kSize);
    svg += buf;
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Frame, grid, and tick labels every quarter.
    std::snprintf(buf, sizeof(buf),
                  "<rect x=\"%.0f\" y=\"%.0f\" width=\"%.0f\" height=\"%.0f\" fill=\"none\" "
                  "stroke=\"black\"/>\n",
                  kMargin, kMargin, kPlot, kPlot);
    svg += buf;
    for (int tick = 1; tick < 4; ++tick) {
        const double f = tick / 4.0;
        std::snprintf(buf, sizeof(buf),
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                      "stroke=\"#dddddd\"/>\n",
                      px(f), py(0.0), px(f), py(1.0));
        svg += buf;
        std::snprintf(buf, sizeof(buf),
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                      "stroke=\"#dddddd\"/>\n",
                      px(0.0), py(f), px(1.0), py(f));
        svg += buf;
    }
    for (int tick = 0; tick <= 4; ++tick) {
        const double f = tick / 4.0;
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" "
                      "text-anchor=\"middle\">%.2f</text>\n",
                      px(f), py(0.0) + 18.0, f);
        svg += buf;
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" "
                      "text-anchor=\"end\">%.2f</text>\n",
                      px(0.0) - 6.0, py(f) + 4.0, f);
        svg += buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"14\" text-anchor=\"middle\">"
                  "False positive rate</text>\n",
                  px(0.5), kSize - 14.0);
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"14\" text-anchor=\"middle\" "
                  "transform=\"rotate(-90 %.1f %.1f)\">True positive rate</text>\n",
                  18.0, py(0.5), 18.0, py(0.5));
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"16\" text-anchor=\"middle\">",
                  px(0.5), kMargin - 16.0);
    svg += buf;
    svg += title;
    svg += "</text>\n";

    // Chance diagonal.
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#999999\" "
                  "stroke-dasharray=\"6 4\"/>\n",
                  px(0.0), py(0.0), px(1.0), py(1.0));
    svg += buf;

    svg += "<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\" points=\"";
    for (const RocPoint& p : curve.points) {
        std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px(p.fpr), py(p.tpr));
        svg += buf;
    }
    svg += "\"/>\n";

    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"14\" text-anchor=\"end\">"
                  "AUC = %.4f</text>\n",
                  px(1.0) - 10.0, py(0.0) - 10.0, curve.auc);
    svg += buf;
    svg += "</svg>\n";

    std::ofstream out(path);
    if (!out) throw IoError(path, "cannot open for writing");
    out << svg;
    if (!out) throw IoError(path, "write failed");
}

}  // namespace platenet
