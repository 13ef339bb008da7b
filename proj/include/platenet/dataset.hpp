#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace platenet {

inline constexpr std::size_t kRawFeatureCount = 27;
inline constexpr std::size_t kFaultClassCount = 7;
inline constexpr std::size_t kRawColumnCount = kRawFeatureCount + kFaultClassCount;

/// Test-set class counts for the fixed-count split mode.
inline constexpr std::size_t kFixedTestPositives = 311;
inline constexpr std::size_t kFixedTestNegatives = 77;

/// The seven fault categories of the plates file, in column order.
enum class FaultClass : int {
    Pastry = 0,
    ZScratch = 1,
    KScratch = 2,
    Stains = 3,
    Dirtiness = 4,
    Bumps = 5,
    OtherFaults = 6,
};

const char* fault_class_name(FaultClass c);

enum class Label { Positive, Negative };

/// Regression target used by the training objective: 1 for Positive, 2 for Negative.
inline double target_value(Label label) { return label == Label::Positive ? 1.0 : 2.0; }

/// One row of the plates file: 27 numeric attributes plus a one-hot
/// fault-category indicator block.
struct RawRecord {
    std::array<double, kRawFeatureCount> features{};
    std::array<int, kFaultClassCount> fault_indicators{};

    FaultClass fault() const;
};

struct BinarySample {
    std::vector<double> features;
    Label label = Label::Negative;
};

enum class PreprocessMode { MinMax, SignBinarize };
enum class FeatureSet { Base27, WithIndicators33 };
enum class SplitMode { Ratio80_20, PaperCounts };

struct DatasetSplit {
    std::vector<BinarySample> train;
    std::vector<BinarySample> test;
    // Row indices into the input sample order, ascending. Together they form
    // a partition of 0..N-1; kept for the reproducibility manifest.
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
    std::uint64_t seed = 0;
    SplitMode mode = SplitMode::Ratio80_20;
};

/// Look at the first data line and decide between tab and comma.
char detect_delimiter(const std::string& path);

/// Parse a delimiter-separated plates file. Every non-empty line must carry
/// exactly 34 numeric fields; the last 7 must form a one-hot indicator block.
std::vector<RawRecord> load_raw(const std::string& path, char delimiter);

/// Label each record: the six named fault categories map to Positive,
/// the catch-all category maps to Negative. Features pass through unchanged.
std::vector<BinarySample> binarize(const std::vector<RawRecord>& records);

/// Assemble model inputs from raw records and rescale them.
///
/// MinMax rescales every column to [0, 1] using min/max over all records
/// (constant columns map to 0). SignBinarize replaces each column that
/// contains a negative value with the indicator (value > 0) and MinMax-scales
/// the rest. WithIndicators33 appends the six named-fault indicator columns
/// to the 27 base attributes before scaling.
std::vector<BinarySample> preprocess(const std::vector<RawRecord>& records,
                                     PreprocessMode mode,
                                     FeatureSet feature_set);

/// Deterministic train/test partition.
///
/// Ratio80_20 shuffles under the seed and sends the first round(0.8 N) rows
/// to train. PaperCounts draws exactly 311 Positive and 77 Negative samples
/// (without replacement) for the test side.
DatasetSplit split(const std::vector<BinarySample>& samples, SplitMode mode, std::uint64_t seed);

/// Comma-separated dump of preprocessed samples with a one-line header.
void write_normalized_csv(const std::string& path, const std::vector<BinarySample>& samples);

/// Row-index manifest for a split, one part per section.
void write_split_manifest(const std::string& path, const DatasetSplit& split);
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> load_split_manifest(
    const std::string& path);

}  // namespace platenet
