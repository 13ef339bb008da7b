#include "platenet/synthetic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "platenet/errors.hpp"
#include "platenet/rng.hpp"

namespace platenet {

namespace {

constexpr std::array<std::size_t, kFaultClassCount> kClassCounts = {158, 190, 391, 72,
                                                                    55,  402, 673};

// Tuning constants for the latent-factor model below. kSeverityGap is the
// distance between the named-fault and other-faults severity centers,
// kSignalShare scales how strongly each column loads on the factor, and
// kNoiseScale widens or narrows every noise term.
constexpr double kSeverityGap = 0.60;
constexpr double kSignalShare = 0.92;
constexpr double kNoiseScale = 0.70;

// Feature column positions within RawRecord::features.
enum Column : std::size_t {
    kXMin = 0,
    kXMax = 1,
    kYMin = 2,
    kYMax = 3,
    kPixelArea = 4,
    kXPerimeter = 5,
    kYPerimeter = 6,
    kLuminositySum = 7,
    kLuminosityMin = 8,
    kLuminosityMax = 9,
    kConveyorLength = 10,
    kSteelA300 = 11,
    kSteelA400 = 12,
    kPlateThickness = 13,
    kEdgesIndex = 14,
    kEmptyIndex = 15,
    kSquareIndex = 16,
    kOutsideXIndex = 17,
    kEdgesXIndex = 18,
    kEdgesYIndex = 19,
    kGlobalIndex = 20,
    kAreaLog = 21,
    kWidthLog = 22,
    kHeightLog = 23,
    kOrientationIndex = 24,
    kLuminosityIndex = 25,
    kAreaSigmoid = 26,
};

/// Latent severity center per fault class. The named classes sit high, the
/// other-faults class sits low, and most columns load on this factor, so the
/// class signal is redundant across the schema — as in real plate data,
/// where size, luminosity, and shape all co-vary with the fault type.
double severity_center(FaultClass c) {
    const double high = 0.5 + kSeverityGap / 2.0;
    const double low = 0.5 - kSeverityGap / 2.0;
    switch (c) {
        case FaultClass::Pastry: return high - 0.02;
        case FaultClass::ZScratch: return high;
        case FaultClass::KScratch: return high + 0.02;
        case FaultClass::Stains: return high + 0.04;
        case FaultClass::Dirtiness: return high - 0.04;
        case FaultClass::Bumps: return high;
        case FaultClass::OtherFaults: return low;
    }
    return 0.5;
}

/// Symmetric bounded noise around `center`: three averaged uniforms give a
/// soft bell shape confined to center ± spread.
double bump(Rng& rng, double center, double spread) {
    const double sum = rng.unit() + rng.unit() + rng.unit();
    return center + spread * (sum - 1.5) / 1.5;
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

/// Values that usually sit in a narrow operating band but occasionally range
/// across the full physical span — coordinates, line settings, stock gauges.
double banded(Rng& rng, double lo, double hi, double wild_lo, double wild_hi) {
    if (rng.bernoulli(0.02)) return rng.uniform(wild_lo, wild_hi);
    return rng.uniform(lo, hi);
}

RawRecord make_record(Rng& rng, FaultClass fault, double severity) {
    RawRecord rec;
    auto& f = rec.features;
    const double s = severity;

    // Blend of the severity factor and fresh noise, mapped onto [lo, hi].
    const auto mixed = [&](double load, double lo, double hi) {
        const double alpha = clamp01(load * kSignalShare);
        return lo + (hi - lo) * clamp01(alpha * s + (1.0 - alpha) * rng.unit());
    };
    // Same, loading on the inverted factor, so some columns anti-correlate.
    const auto mixed_inv = [&](double load, double lo, double hi) {
        const double alpha = clamp01(load * kSignalShare);
        return lo + (hi - lo) * clamp01(alpha * (1.0 - s) + (1.0 - alpha) * rng.unit());
    };

    const double width = mixed(1.0, 5.0, 200.0);
    const double height = mixed(1.0, 5.0, 500.0);
    f[kXMin] = std::floor(banded(rng, 640.0, 760.0, 0.0, 1500.0));
    f[kXMax] = f[kXMin] + std::ceil(width);
    f[kYMin] = std::floor(banded(rng, 8.8e5, 9.6e5, 1.0e5, 2.0e6));
    f[kYMax] = f[kYMin] + std::ceil(height);

    const double area = std::max(2.0, std::round(width * height * rng.uniform(0.42, 0.52)));
    f[kPixelArea] = area;
    f[kXPerimeter] = std::round(width * rng.uniform(1.15, 1.45));
    f[kYPerimeter] = std::round(height * rng.uniform(1.15, 1.45));

    f[kLuminosityMin] = std::floor(mixed_inv(1.0, 30.0, 120.0));
    f[kLuminosityMax] =
        std::min(255.0, f[kLuminosityMin] + std::floor(mixed(1.0, 11.0, 190.0)));
    f[kLuminositySum] = std::round(area * mixed(1.0, 60.0, 140.0));

    f[kConveyorLength] = std::floor(banded(rng, 1352.0, 1364.0, 1200.0, 1400.0));
    const bool a300 = rng.bernoulli(0.99);
    f[kSteelA300] = a300 ? 1.0 : 0.0;
    f[kSteelA400] = a300 ? 0.0 : 1.0;
    f[kPlateThickness] = std::floor(banded(rng, 40.0, 62.0, 40.0, 300.0));

    f[kEdgesIndex] = clamp01(bump(rng, 0.06 + 0.88 * s, 0.04 * kNoiseScale));
    f[kEmptyIndex] = clamp01(bump(rng, 0.05 + 0.90 * s, 0.04 * kNoiseScale));
    f[kSquareIndex] = mixed(1.0, 0.0, 1.0);
    f[kOutsideXIndex] = mixed(1.0, 0.0, 0.2);
    f[kEdgesXIndex] = mixed_inv(1.0, 0.0, 1.0);
    f[kEdgesYIndex] = mixed(1.0, 0.0, 1.0);
    f[kGlobalIndex] = clamp01(bump(rng, s, 0.03 * kNoiseScale));

    f[kAreaLog] = std::log10(area);
    f[kWidthLog] = std::log10(width);
    f[kHeightLog] = std::log10(height);

    f[kOrientationIndex] = mixed(1.0, -1.0, 1.0);
    f[kLuminosityIndex] = mixed_inv(1.0, -0.99, 0.99);
    f[kAreaSigmoid] = 1.0 / (1.0 + std::exp(-(area - 5000.0) / 3000.0));

    rec.fault_indicators[static_cast<std::size_t>(fault)] = 1;
    return rec;
}

}  // namespace

std::vector<RawRecord> synthetic_records(std::uint64_t seed) {
    Rng rng(seed);
    std::vector<RawRecord> records;
    records.reserve(1941);
    for (std::size_t c = 0; c < kFaultClassCount; ++c) {
        const auto fault = static_cast<FaultClass>(c);
        for (std::size_t i = 0; i < kClassCounts[c]; ++i) {
            double center = severity_center(fault);
            // A small share of confuser rows wears the other side's severity,
            // so no single threshold is ever perfect.
            if (rng.bernoulli(0.02)) {
                center = fault == FaultClass::OtherFaults
                             ? severity_center(static_cast<FaultClass>(rng.below(6)))
                             : severity_center(FaultClass::OtherFaults);
            }
            const double severity = clamp01(bump(rng, center, 0.06 * kNoiseScale));
            records.push_back(make_record(rng, fault, severity));
        }
    }
    return records;
}

void write_delimited(const std::string& path, const std::vector<RawRecord>& records,
                     char delimiter) {
    std::ofstream out(path);
    if (!out) throw IoError(path, "cannot open for writing");
    char buf[64];
    for (const RawRecord& rec : records) {
        for (double v : rec.features) {
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
            out.write(buf, ptr - buf);
            out << delimiter;
        }
        for (std::size_t i = 0; i < rec.fault_indicators.size(); ++i) {
            out << rec.fault_indicators[i];
            if (i + 1 < rec.fault_indicators.size()) out << delimiter;
        }
        out << '\n';
    }
    if (!out) throw IoError(path, "write failed");
}

}  // namespace platenet
