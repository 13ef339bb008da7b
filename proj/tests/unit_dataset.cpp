#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "platenet/dataset.hpp"
#include "platenet/errors.hpp"
#include "platenet/synthetic.hpp"
#include "support.hpp"

using namespace platenet;
using testsupport::TempDir;
using testsupport::plate_record;
using testsupport::write_file;

namespace {

/// One data line: 27 feature fields followed by a one-hot indicator block.
std::string data_line(const std::array<double, kRawFeatureCount>& features, int fault_index,
                      char delimiter = '\t') {
    std::ostringstream out;
    for (double v : features) out << v << delimiter;
    for (std::size_t i = 0; i < kFaultClassCount; ++i) {
        out << (static_cast<int>(i) == fault_index ? 1 : 0);
        if (i + 1 < kFaultClassCount) out << delimiter;
    }
    return out.str();
}

std::array<double, kRawFeatureCount> ramp(double start, double step) {
    std::array<double, kRawFeatureCount> features{};
    for (std::size_t i = 0; i < features.size(); ++i)
        features[i] = start + step * static_cast<double>(i);
    return features;
}

std::vector<BinarySample> count_samples(std::size_t positives, std::size_t negatives) {
    std::vector<BinarySample> samples;
    for (std::size_t i = 0; i < positives + negatives; ++i) {
        BinarySample s;
        s.features = {static_cast<double>(i)};
        s.label = i < positives ? Label::Positive : Label::Negative;
        samples.push_back(std::move(s));
    }
    return samples;
}

}  // namespace

TEST_CASE("load_raw parses fields, skips blank lines, strips CRLF") {
    TempDir tmp;
    const std::string path = tmp.file("plates.tsv");
    const auto first = ramp(0.5, 0.25);
    std::string content;
    content += data_line(first, 0) + "\r\n";  // Windows line ending
    content += "\n";                          // blank line between records
    content += data_line(ramp(-3.0, 1.0), 6) + "\n";
    // Exponent and fractional literals must parse like any other number.
    content += "1e2\t-0.5\t3.25";
    for (std::size_t i = 3; i < kRawFeatureCount; ++i) content += "\t0";
    content += "\t0\t0\t1\t0\t0\t0\t0\n";
    write_file(path, content);

    const std::vector<RawRecord> records = load_raw(path, '\t');
    REQUIRE(records.size() == 3);
    for (std::size_t i = 0; i < kRawFeatureCount; ++i)
        CHECK(records[0].features[i] == first[i]);
    CHECK(records[0].fault() == FaultClass::Pastry);
    CHECK(records[1].fault() == FaultClass::OtherFaults);
    CHECK(records[2].features[0] == 100.0);
    CHECK(records[2].features[1] == -0.5);
    CHECK(records[2].features[2] == 3.25);
    CHECK(records[2].fault() == FaultClass::KScratch);
}

TEST_CASE("load_raw reports the offending row and column") {
    TempDir tmp;
    const std::string path = tmp.file("plates.tsv");

    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_raw(tmp.file("absent.tsv"), '\t'), MissingFileError);
    }

    SUBCASE("wrong field count") {
        std::string line = data_line(ramp(0, 1), 0);
        line.erase(line.rfind('\t'));  // drop the last field
        write_file(path, data_line(ramp(0, 1), 1) + "\n" + line + "\n");
        try {
            load_raw(path, '\t');
            FAIL("expected RowArityError");
        } catch (const RowArityError& e) {
            CHECK(e.row == 2);
            CHECK(e.found == kRawColumnCount - 1);
            CHECK(e.expected == kRawColumnCount);
        }
    }

    SUBCASE("non-numeric field") {
        std::string line = data_line(ramp(0, 1), 0);
        const std::size_t third = line.find('\t', line.find('\t') + 1) + 1;
        line.replace(third, line.find('\t', third) - third, "abc");
        write_file(path, line + "\n");
        try {
            load_raw(path, '\t');
            FAIL("expected NonNumericFieldError");
        } catch (const NonNumericFieldError& e) {
            CHECK(e.row == 1);
            CHECK(e.col == 3);
            CHECK(e.text == "abc");
        }
    }

    SUBCASE("infinite value") {
        std::string line = data_line(ramp(0, 1), 0);
        line.replace(0, line.find('\t'), "inf");
        write_file(path, line + "\n");
        CHECK_THROWS_AS(load_raw(path, '\t'), NonNumericFieldError);
    }

    SUBCASE("two indicator flags set") {
        std::string line = data_line(ramp(0, 1), 0);
        line.back() = '1';  // Pastry and Other_Faults both flagged
        write_file(path, line + "\n");
        CHECK_THROWS_AS(load_raw(path, '\t'), BadIndicatorError);
    }

    SUBCASE("no indicator flag set") {
        write_file(path, data_line(ramp(0, 1), -1) + "\n");
        CHECK_THROWS_AS(load_raw(path, '\t'), BadIndicatorError);
    }

    SUBCASE("fractional indicator value") {
        std::string line = data_line(ramp(0, 1), 0);
        line.replace(line.rfind("1"), 1, "0.5");
        write_file(path, line + "\n");
        CHECK_THROWS_AS(load_raw(path, '\t'), BadIndicatorError);
    }
}

TEST_CASE("detect_delimiter looks at the first data line") {
    TempDir tmp;
    const std::string tabbed = tmp.file("tabbed.tsv");
    const std::string comma = tmp.file("comma.csv");
    const std::string blank = tmp.file("blank.txt");
    write_file(tabbed, "\n" + data_line(ramp(0, 1), 0, '\t') + "\n");
    write_file(comma, data_line(ramp(0, 1), 0, ',') + "\n");
    write_file(blank, "\n\n");
    CHECK(detect_delimiter(tabbed) == '\t');
    CHECK(detect_delimiter(comma) == ',');
    CHECK(detect_delimiter(blank) == '\t');
    CHECK_THROWS_AS(detect_delimiter(tmp.file("absent.tsv")), MissingFileError);
}

TEST_CASE("comma files round-trip like tab files") {
    TempDir tmp;
    const std::string path = tmp.file("plates.csv");
    write_file(path, data_line(ramp(1.5, 0.5), 3, ',') + "\n");
    const std::vector<RawRecord> records = load_raw(path, detect_delimiter(path));
    REQUIRE(records.size() == 1);
    CHECK(records[0].fault() == FaultClass::Stains);
    CHECK(records[0].features[26] == 1.5 + 0.5 * 26);
}

TEST_CASE("binarize maps the six named faults to Positive") {
    std::vector<RawRecord> records;
    for (int c = 0; c < static_cast<int>(kFaultClassCount); ++c)
        records.push_back(plate_record(static_cast<FaultClass>(c), static_cast<double>(c)));

    const std::vector<BinarySample> samples = binarize(records);
    REQUIRE(samples.size() == kFaultClassCount);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const bool named = static_cast<FaultClass>(i) != FaultClass::OtherFaults;
        CHECK(samples[i].label == (named ? Label::Positive : Label::Negative));
        REQUIRE(samples[i].features.size() == kRawFeatureCount);
        CHECK(samples[i].features[0] == static_cast<double>(i));  // passes through unscaled
    }
}

TEST_CASE("fault_class_name matches the column order") {
    CHECK(std::string(fault_class_name(FaultClass::Pastry)) == "Pastry");
    CHECK(std::string(fault_class_name(FaultClass::KScratch)) == "K_Scratch");
    CHECK(std::string(fault_class_name(FaultClass::OtherFaults)) == "Other_Faults");
}

TEST_CASE("min-max preprocessing rescales each column independently") {
    std::vector<RawRecord> records = {plate_record(FaultClass::Pastry),
                                      plate_record(FaultClass::Bumps),
                                      plate_record(FaultClass::OtherFaults)};
    records[0].features[0] = 2.0;
    records[1].features[0] = 4.0;
    records[2].features[0] = 6.0;
    for (auto& r : records) r.features[1] = 5.0;  // constant column
    records[0].features[2] = -1.0;
    records[1].features[2] = 0.0;
    records[2].features[2] = 3.0;

    const auto samples = preprocess(records, PreprocessMode::MinMax, FeatureSet::Base27);
    REQUIRE(samples.size() == 3);
    REQUIRE(samples[0].features.size() == kRawFeatureCount);
    CHECK(samples[0].features[0] == 0.0);
    CHECK(samples[1].features[0] == 0.5);
    CHECK(samples[2].features[0] == 1.0);
    // A constant column has no range to scale over and collapses to zero.
    for (const auto& s : samples) CHECK(s.features[1] == 0.0);
    CHECK(samples[0].features[2] == 0.0);
    CHECK(samples[1].features[2] == doctest::Approx(0.25));
    CHECK(samples[2].features[2] == 1.0);
    CHECK(samples[0].label == Label::Positive);
    CHECK(samples[2].label == Label::Negative);
}

TEST_CASE("min-max preprocessing lands every value in the unit interval") {
    const auto samples =
        preprocess(synthetic_records(), PreprocessMode::MinMax, FeatureSet::Base27);
    for (const auto& s : samples)
        for (double v : s.features) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
}

TEST_CASE("sign preprocessing binarizes only columns containing negatives") {
    std::vector<RawRecord> records = {plate_record(FaultClass::Pastry),
                                      plate_record(FaultClass::Bumps),
                                      plate_record(FaultClass::OtherFaults)};
    records[0].features[0] = -1.0;
    records[1].features[0] = 0.0;
    records[2].features[0] = 3.0;
    records[0].features[1] = 2.0;
    records[1].features[1] = 4.0;
    records[2].features[1] = 6.0;

    const auto samples = preprocess(records, PreprocessMode::SignBinarize, FeatureSet::Base27);
    // Column 0 holds a negative, so it turns into the (value > 0) flag.
    CHECK(samples[0].features[0] == 0.0);
    CHECK(samples[1].features[0] == 0.0);
    CHECK(samples[2].features[0] == 1.0);
    // Column 1 never goes negative and is min-max scaled as usual.
    CHECK(samples[0].features[1] == 0.0);
    CHECK(samples[1].features[1] == 0.5);
    CHECK(samples[2].features[1] == 1.0);
}

TEST_CASE("indicator feature set appends the six named-fault flags") {
    std::vector<RawRecord> records;
    for (int c = 0; c < static_cast<int>(kFaultClassCount); ++c)
        records.push_back(plate_record(static_cast<FaultClass>(c)));

    const auto samples =
        preprocess(records, PreprocessMode::MinMax, FeatureSet::WithIndicators33);
    REQUIRE(samples.size() == kFaultClassCount);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        REQUIRE(samples[i].features.size() == kRawFeatureCount + 6);
        for (std::size_t c = 0; c < 6; ++c) {
            const double expected = i == c ? 1.0 : 0.0;
            CHECK(samples[i].features[kRawFeatureCount + c] == expected);
        }
    }
    // The catch-all class carries no named-fault flag at all.
    const auto& other = samples[static_cast<std::size_t>(FaultClass::OtherFaults)].features;
    const double flag_sum = std::accumulate(other.begin() + kRawFeatureCount, other.end(), 0.0);
    CHECK(flag_sum == 0.0);
}

TEST_CASE("preprocess rejects an empty record list") {
    CHECK_THROWS_AS(preprocess({}, PreprocessMode::MinMax, FeatureSet::Base27),
                    EmptyInputError);
}

TEST_CASE("80:20 split partitions the rows") {
    const auto samples = count_samples(30, 20);
    const DatasetSplit result = split(samples, SplitMode::Ratio80_20, 7);

    CHECK(result.mode == SplitMode::Ratio80_20);
    CHECK(result.seed == 7);
    CHECK(result.train_indices.size() == 40);
    CHECK(result.test_indices.size() == 10);
    CHECK(result.train.size() == 40);
    CHECK(result.test.size() == 10);

    CHECK(std::is_sorted(result.train_indices.begin(), result.train_indices.end()));
    CHECK(std::is_sorted(result.test_indices.begin(), result.test_indices.end()));

    std::vector<std::size_t> all = result.train_indices;
    all.insert(all.end(), result.test_indices.begin(), result.test_indices.end());
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> expected(samples.size());
    std::iota(expected.begin(), expected.end(), std::size_t{0});
    CHECK(all == expected);  // disjoint and complete

    for (std::size_t i = 0; i < result.train_indices.size(); ++i)
        CHECK(result.train[i].features == samples[result.train_indices[i]].features);
    for (std::size_t i = 0; i < result.test_indices.size(); ++i)
        CHECK(result.test[i].features == samples[result.test_indices[i]].features);
}

TEST_CASE("80:20 split rounds the train count to the nearest row") {
    CHECK(split(count_samples(5, 2), SplitMode::Ratio80_20, 1).train.size() == 6);   // 5.6 up
    CHECK(split(count_samples(5, 4), SplitMode::Ratio80_20, 1).train.size() == 7);   // 7.2 down
    CHECK(split(count_samples(5, 5), SplitMode::Ratio80_20, 1).train.size() == 8);
}

TEST_CASE("splits are a pure function of the seed") {
    const auto samples = count_samples(30, 20);
    const DatasetSplit a = split(samples, SplitMode::Ratio80_20, 11);
    const DatasetSplit b = split(samples, SplitMode::Ratio80_20, 11);
    const DatasetSplit c = split(samples, SplitMode::Ratio80_20, 12);
    CHECK(a.train_indices == b.train_indices);
    CHECK(a.test_indices == b.test_indices);
    CHECK(a.train_indices != c.train_indices);
}

TEST_CASE("fixed-count split draws exactly 311 positive and 77 negative test rows") {
    const auto samples =
        preprocess(synthetic_records(), PreprocessMode::MinMax, FeatureSet::Base27);
    const DatasetSplit result = split(samples, SplitMode::PaperCounts, 3);

    CHECK(result.test.size() == kFixedTestPositives + kFixedTestNegatives);
    CHECK(result.train.size() == samples.size() - result.test.size());
    std::size_t test_positives = 0;
    for (const auto& s : result.test) test_positives += s.label == Label::Positive ? 1 : 0;
    CHECK(test_positives == kFixedTestPositives);

    std::vector<std::size_t> all = result.train_indices;
    all.insert(all.end(), result.test_indices.begin(), result.test_indices.end());
    std::sort(all.begin(), all.end());
    CHECK(all.size() == samples.size());
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
}

TEST_CASE("fixed-count split refuses a class that is too small") {
    try {
        split(count_samples(5, 500), SplitMode::PaperCounts, 1);
        FAIL("expected InsufficientClassCountError");
    } catch (const InsufficientClassCountError& e) {
        CHECK(e.required == kFixedTestPositives);
        CHECK(e.available == 5);
    }
    CHECK_THROWS_AS(split(count_samples(500, 5), SplitMode::PaperCounts, 1),
                    InsufficientClassCountError);
}

TEST_CASE("split needs at least two rows") {
    CHECK_THROWS_AS(split({}, SplitMode::Ratio80_20, 1), InvalidValueError);
    CHECK_THROWS_AS(split(count_samples(1, 0), SplitMode::Ratio80_20, 1), InvalidValueError);
}

TEST_CASE("split manifests round-trip the row indices") {
    TempDir tmp;
    const auto samples = count_samples(30, 20);
    const DatasetSplit original = split(samples, SplitMode::Ratio80_20, 5);
    const std::string path = tmp.file("split_manifest.txt");
    write_split_manifest(path, original);

    const auto [train_indices, test_indices] = load_split_manifest(path);
    CHECK(train_indices == original.train_indices);
    CHECK(test_indices == original.test_indices);
}

TEST_CASE("split manifest loading rejects damaged files") {
    TempDir tmp;
    CHECK_THROWS_AS(load_split_manifest(tmp.file("absent.txt")), MissingFileError);

    const std::string garbled = tmp.file("garbled.txt");
    write_file(garbled, "who knows\n");
    CHECK_THROWS_AS(load_split_manifest(garbled), IoError);

    const std::string truncated = tmp.file("truncated.txt");
    write_file(truncated, "mode ratio\nseed 1\ntrain 3\n0\n1\n");
    CHECK_THROWS_AS(load_split_manifest(truncated), IoError);
}

TEST_CASE("normalized CSV dump is exact") {
    TempDir tmp;
    std::vector<BinarySample> samples(2);
    samples[0].features = {0.25, 1.0};
    samples[0].label = Label::Positive;
    samples[1].features = {0.5, 0.0};
    samples[1].label = Label::Negative;

    const std::string path = tmp.file("normalized.csv");
    write_normalized_csv(path, samples);
    CHECK(testsupport::read_file(path) == "f0,f1,label\n0.25,1,positive\n0.5,0,negative\n");
}
