#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "platenet/dataset.hpp"

namespace platenet {

/// Deterministic stand-in for the steel-plates fault table: 1941 records with
/// the canonical per-class counts (158/190/391/72/55/402/673) and the full
/// 27-feature geometry/luminosity schema. Named fault classes and the
/// other-faults class get separated index-feature profiles with deliberate
/// overlap plus a small fraction of confuser rows, so learned classifiers top
/// out below perfect accuracy.
std::vector<RawRecord> synthetic_records(std::uint64_t seed = 9);

/// Write records in the on-disk layout load_raw expects: one row per record,
/// 27 feature fields followed by the 7 one-hot fault indicators.
void write_delimited(const std::string& path, const std::vector<RawRecord>& records,
                     char delimiter = '\t');

}  // namespace platenet
