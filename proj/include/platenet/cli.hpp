#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "platenet/experiment.hpp"

namespace platenet {

struct BenchOptions {
    std::string function = "all";   ///< sphere | rosenbrock | rastrigin | all
    std::string algorithm = "all";  ///< gwo | mgwo | fdo | all
    std::size_t dimension = 10;
    std::size_t agents = 30;
    std::size_t max_iter = 500;
    std::uint64_t seed = 1;
    std::size_t repeats = 1;
};

struct EvalOptions {
    std::string data_path;
    char delimiter = '\0';
    PreprocessMode preprocess = PreprocessMode::MinMax;
    FeatureSet feature_set = FeatureSet::Base27;
    std::string model_path;
    std::string manifest_path;
};

struct SynthOptions {
    std::string out_path = "synthetic.tsv";
    std::uint64_t seed = 9;
    char delimiter = '\t';
};

enum class Command { None, Train, Suite, Bench, Eval, Synth };

struct CliRequest {
    Command command = Command::None;
    ExperimentConfig experiment;
    BenchOptions bench;
    EvalOptions eval;
    SynthOptions synth;
    std::set<std::string> formats;
    bool help = false;
    std::string help_text;
};

/// Parse command-line arguments (program name excluded, natural order).
/// Flags override config-file values, which override built-in defaults.
/// Throws UnknownFlagError / InvalidValueError on bad input.
CliRequest parse_config(const std::vector<std::string>& args);

/// Full command dispatch; returns a process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace platenet
