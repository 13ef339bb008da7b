#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "platenet/dataset.hpp"
#include "platenet/evaluation.hpp"
#include "platenet/network.hpp"
#include "platenet/optimizer.hpp"

namespace platenet {

/// Everything one training experiment needs. The defaults are the reference
/// protocol: 10 agents, 50 iterations, 80:20 split, min–max scaling over the
/// 27 base features, hidden layer sized by the 2·I+1 rule, weights searched
/// in [-10, 10].
struct ExperimentConfig {
    std::string data_path;
    char delimiter = '\0';  ///< '\0' = detect from the first line
    PreprocessMode preprocess = PreprocessMode::MinMax;
    FeatureSet feature_set = FeatureSet::Base27;
    SplitMode split_mode = SplitMode::Ratio80_20;
    std::uint64_t split_seed = 1;
    bool cascade = false;
    Algorithm algorithm = Algorithm::GWO;
    std::size_t hidden_override = 0;  ///< 0 = derive from input count
    std::size_t agents = 10;
    std::size_t max_iter = 50;
    std::uint64_t seed = 1;  ///< master optimizer seed
    int wf = 0;
    double bound = 10.0;
    std::string out_dir = "runs";
    std::size_t repeats = 1;
    std::size_t threads = 1;
};

/// One optimizer/network pairing of the five standard ones.
struct ModelSpec {
    Algorithm algorithm = Algorithm::GWO;
    bool cascade = false;
};

/// GWO_MLP, MGWO_MLP, GWO_CMLP, FDO_MLP, FDO_CMLP.
std::vector<ModelSpec> standard_models();

std::string model_name(Algorithm algorithm, bool cascade);

/// Per-repeat optimizer seed: repeat 0 runs the master seed itself, repeat
/// r > 0 runs splitmix64(master + r).
std::uint64_t derive_run_seed(std::uint64_t master_seed, std::size_t repeat);

/// Confusion matrix, metrics, and MSE of one model over one split phase.
struct PhaseRecord {
    ConfusionMatrix cm;
    MetricsReport metrics;
};

struct RunRecord {
    std::string model;
    Algorithm algorithm = Algorithm::GWO;
    bool cascade = false;
    std::uint64_t opt_seed = 0;
    TopologySpec topology;
    std::size_t samples = 0;     ///< total dataset rows
    std::size_t dimensions = 0;  ///< searched parameter count
    PhaseRecord train;
    PhaseRecord test;
    RocCurve test_roc;
    OptRun opt;  ///< best parameters, history, evaluations, elapsed time
};

struct ExperimentReport {
    ExperimentConfig config;
    DatasetSplit split;
    std::vector<RunRecord> runs;
};

/// Train each requested model `config.repeats` times on one shared split.
/// The test split never reaches the optimizer's objective.
ExperimentReport run_suite(const ExperimentConfig& config,
                           const std::vector<ModelSpec>& models);

/// Single-model convenience wrapper around run_suite.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Known emit_reports format names:
///   tables   - aligned-text summary/per-class/metric tables
///   json     - one structured document per run
///   csv      - combined metrics table, convergence history, ROC points
///   svg      - ROC plot per run
///   model    - persisted best parameters per run
///   manifest - the split's row indices
const std::set<std::string>& known_formats();

/// Write the selected artifact families under config.out_dir and return the
/// created paths. An empty format set writes nothing. If any write fails the
/// already-written files of this call are removed before the error escapes.
std::vector<std::string> emit_reports(const ExperimentReport& report,
                                      const std::set<std::string>& formats);

/// Re-score a persisted model against the split recorded in a manifest.
struct EvaluationOutcome {
    TopologySpec topology;
    PhaseRecord train;
    PhaseRecord test;
    RocCurve test_roc;
};

EvaluationOutcome evaluate_saved_model(const std::string& data_path, char delimiter,
                                       PreprocessMode preprocess, FeatureSet feature_set,
                                       const std::string& model_path,
                                       const std::string& manifest_path);

}  // namespace platenet
