#include "platenet/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "platenet/errors.hpp"
#include "platenet/rng.hpp"

namespace platenet {

namespace {

constexpr const char* kFaultNames[kFaultClassCount] = {
    "Pastry", "Z_Scratch", "K_Scratch", "Stains", "Dirtiness", "Bumps", "Other_Faults"};

double parse_field(const std::string& field, std::size_t row, std::size_t col) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        throw NonNumericFieldError(row, col, field);
    }
    return value;
}

void split_line(const std::string& line, char delimiter, std::vector<std::string>& out) {
    out.clear();
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delimiter, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

const char* fault_class_name(FaultClass c) { return kFaultNames[static_cast<int>(c)]; }

FaultClass RawRecord::fault() const {
    for (std::size_t i = 0; i < kFaultClassCount; ++i) {
        if (fault_indicators[i] == 1) return static_cast<FaultClass>(i);
    }
    return FaultClass::OtherFaults;  // unreachable for validated records
}

char detect_delimiter(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MissingFileError(path);
    std::string line;
    while (std::getline(in, line)) {
        strip_cr(line);
        if (line.empty()) continue;
        if (line.find('\t') != std::string::npos) return '\t';
        return ',';
    }
    return '\t';
}

std::vector<RawRecord> load_raw(const std::string& path, char delimiter) {
    std::ifstream in(path);
    if (!in) throw MissingFileError(path);

    std::vector<RawRecord> records;
    std::vector<std::string> fields;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        strip_cr(line);
        if (line.empty()) continue;
        split_line(line, delimiter, fields);
        if (fields.size() != kRawColumnCount) {
            throw RowArityError(row, fields.size(), kRawColumnCount);
        }
        RawRecord rec;
        for (std::size_t i = 0; i < kRawFeatureCount; ++i) {
            rec.features[i] = parse_field(fields[i], row, i + 1);
        }
        int sum = 0;
        for (std::size_t i = 0; i < kFaultClassCount; ++i) {
            const double v = parse_field(fields[kRawFeatureCount + i], row, kRawFeatureCount + i + 1);
            if (v != 0.0 && v != 1.0) throw BadIndicatorError(row);
            rec.fault_indicators[i] = static_cast<int>(v);
            sum += rec.fault_indicators[i];
        }
        if (sum != 1) throw BadIndicatorError(row);
        records.push_back(rec);
    }
    return records;
}

std::vector<BinarySample> binarize(const std::vector<RawRecord>& records) {
    std::vector<BinarySample> samples;
    samples.reserve(records.size());
    for (const RawRecord& rec : records) {
        BinarySample s;
        s.features.assign(rec.features.begin(), rec.features.end());
        s.label = rec.fault() == FaultClass::OtherFaults ? Label::Negative : Label::Positive;
        samples.push_back(std::move(s));
    }
    return samples;
}

std::vector<BinarySample> preprocess(const std::vector<RawRecord>& records,
                                     PreprocessMode mode,
                                     FeatureSet feature_set) {
    if (records.empty()) throw EmptyInputError("preprocess");

    std::vector<BinarySample> samples = binarize(records);
    const std::size_t width =
        feature_set == FeatureSet::WithIndicators33 ? kRawFeatureCount + 6 : kRawFeatureCount;
    if (feature_set == FeatureSet::WithIndicators33) {
        for (std::size_t i = 0; i < samples.size(); ++i) {
            for (std::size_t c = 0; c < 6; ++c) {
                samples[i].features.push_back(static_cast<double>(records[i].fault_indicators[c]));
            }
        }
    }

    // Column statistics over the whole dataset, gathered before any split.
    std::vector<double> lo(width, std::numeric_limits<double>::infinity());
    std::vector<double> hi(width, -std::numeric_limits<double>::infinity());
    for (const BinarySample& s : samples) {
        for (std::size_t c = 0; c < width; ++c) {
            lo[c] = std::min(lo[c], s.features[c]);
            hi[c] = std::max(hi[c], s.features[c]);
        }
    }

    for (std::size_t c = 0; c < width; ++c) {
        const bool sign_eligible = mode == PreprocessMode::SignBinarize && lo[c] < 0.0;
        const double range = hi[c] - lo[c];
        for (BinarySample& s : samples) {
            double& v = s.features[c];
            if (sign_eligible) {
                v = v > 0.0 ? 1.0 : 0.0;
            } else if (range == 0.0) {
                v = 0.0;  // constant column
            } else {
                v = (v - lo[c]) / range;
            }
        }
    }
    return samples;
}

DatasetSplit split(const std::vector<BinarySample>& samples, SplitMode mode, std::uint64_t seed) {
    const std::size_t n = samples.size();
    if (n < 2) throw InvalidValueError("samples", "need at least 2 samples to split");

    DatasetSplit result;
    result.seed = seed;
    result.mode = mode;
    Rng rng(seed);

    if (mode == SplitMode::Ratio80_20) {
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        rng.shuffle(order);
        const std::size_t train_count = static_cast<std::size_t>(std::llround(0.8 * static_cast<double>(n)));
        result.train_indices.assign(order.begin(), order.begin() + train_count);
        result.test_indices.assign(order.begin() + train_count, order.end());
    } else {
        std::vector<std::size_t> pos, neg;
        for (std::size_t i = 0; i < n; ++i) {
            (samples[i].label == Label::Positive ? pos : neg).push_back(i);
        }
        if (pos.size() < kFixedTestPositives) {
            throw InsufficientClassCountError("Positive", kFixedTestPositives, pos.size());
        }
        if (neg.size() < kFixedTestNegatives) {
            throw InsufficientClassCountError("Negative", kFixedTestNegatives, neg.size());
        }
        rng.shuffle(pos);
        rng.shuffle(neg);
        result.test_indices.assign(pos.begin(), pos.begin() + kFixedTestPositives);
        result.test_indices.insert(result.test_indices.end(), neg.begin(),
                                   neg.begin() + kFixedTestNegatives);
        result.train_indices.assign(pos.begin() + kFixedTestPositives, pos.end());
        result.train_indices.insert(result.train_indices.end(), neg.begin() + kFixedTestNegatives,
                                    neg.end());
    }

    std::sort(result.train_indices.begin(), result.train_indices.end());
    std::sort(result.test_indices.begin(), result.test_indices.end());
    result.train.reserve(result.train_indices.size());
    result.test.reserve(result.test_indices.size());
    for (std::size_t i : result.train_indices) result.train.push_back(samples[i]);
    for (std::size_t i : result.test_indices) result.test.push_back(samples[i]);
    return result;
}

void write_normalized_csv(const std::string& path, const std::vector<BinarySample>& samples) {
    std::ofstream out(path);
    if (!out) throw IoError(path, "cannot open for writing");
    const std::size_t width = samples.empty() ? 0 : samples[0].features.size();
    for (std::size_t c = 0; c < width; ++c) out << "f" << c << ",";
    out << "label\n";
    char buf[64];
    for (const BinarySample& s : samples) {
        for (double v : s.features) {
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
            out.write(buf, ptr - buf);
            out << ',';
        }
        out << (s.label == Label::Positive ? "positive" : "negative") << '\n';
    }
    if (!out) throw IoError(path, "write failed");
}

void write_split_manifest(const std::string& path, const DatasetSplit& split) {
    std::ofstream out(path);
    if (!out) throw IoError(path, "cannot open for writing");
    out << "mode " << (split.mode == SplitMode::Ratio80_20 ? "ratio" : "paper-counts") << '\n';
    out << "seed " << split.seed << '\n';
    out << "train " << split.train_indices.size() << '\n';
    for (std::size_t i : split.train_indices) out << i << '\n';
    out << "test " << split.test_indices.size() << '\n';
    for (std::size_t i : split.test_indices) out << i << '\n';
    if (!out) throw IoError(path, "write failed");
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> load_split_manifest(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MissingFileError(path);
    std::string word;
    std::uint64_t seed = 0;
    std::size_t count = 0;
    std::vector<std::size_t> train, test;
    if (!(in >> word >> word)) throw IoError(path, "truncated manifest header");
    if (!(in >> word >> seed) || word != "seed") throw IoError(path, "bad manifest seed line");
    if (!(in >> word >> count) || word != "train") throw IoError(path, "bad manifest train header");
    train.resize(count);
    for (std::size_t& i : train) {
        if (!(in >> i)) throw IoError(path, "truncated train index list");
    }
    if (!(in >> word >> count) || word != "test") throw IoError(path, "bad manifest test header");
    test.resize(count);
    for (std::size_t& i : test) {
        if (!(in >> i)) throw IoError(path, "truncated test index list");
    }
    return {std::move(train), std::move(test)};
}

}  // namespace platenet
