#include "platenet/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <system_error>

#include <json.hpp>

#include "platenet/errors.hpp"
#include "platenet/rng.hpp"

namespace platenet {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string fixed_text(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return buf;
}

std::string shortest_text(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string percent_text(const std::optional<double>& v) {
    return v ? fixed_text(*v * 100.0, 3) + " %" : "n/a";
}

std::string metric_text(const std::optional<double>& v) {
    return v ? fixed_text(*v, 4) : "n/a";
}

std::string runtime_text(double seconds) { return fixed_text(seconds, 3) + "s"; }

std::string csv_optional(const std::optional<double>& v) {
    return v ? shortest_text(*v) : std::string();
}

const char* preprocess_name(PreprocessMode mode) {
    return mode == PreprocessMode::MinMax ? "minmax" : "sign";
}

const char* feature_set_name(FeatureSet fs_) {
    return fs_ == FeatureSet::Base27 ? "base27" : "indicators33";
}

const char* split_mode_name(SplitMode mode) {
    return mode == SplitMode::Ratio80_20 ? "ratio" : "paper-counts";
}

/// Monospace table with a dashed rule under the header. Column widths grow
/// to fit content but never shrink below min_width, which keeps layout
/// stable across reruns whose only difference is timing digits.
struct TextTable {
    std::vector<std::string> header;
    std::vector<bool> left;
    std::vector<std::size_t> min_width;
    std::vector<std::vector<std::string>> rows;

    std::string render() const {
        std::vector<std::size_t> width(header.size());
        for (std::size_t c = 0; c < header.size(); ++c) {
            width[c] = header[c].size();
            if (c < min_width.size()) width[c] = std::max(width[c], min_width[c]);
        }
        for (const auto& row : rows)
            for (std::size_t c = 0; c < row.size() && c < width.size(); ++c)
                width[c] = std::max(width[c], row[c].size());

        std::string out;
        const auto emit = [&](const std::vector<std::string>& row) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) out += "  ";
                const std::size_t pad = width[c] - row[c].size();
                const bool align_left = c < left.size() && left[c];
                if (align_left) {
                    out += row[c];
                    if (c + 1 < row.size()) out.append(pad, ' ');
                } else {
                    out.append(pad, ' ');
                    out += row[c];
                }
            }
            out += '\n';
        };
        emit(header);
        std::size_t total = 0;
        for (std::size_t c = 0; c < width.size(); ++c) total += width[c] + (c ? 2 : 0);
        out.append(total, '-');
        out += '\n';
        for (const auto& row : rows) emit(row);
        return out;
    }
};

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

PhaseRecord evaluate_phase(const TopologySpec& spec, const ParamVector& params,
                           const std::vector<BinarySample>& samples,
                           std::vector<double>* scores_out) {
    std::vector<Label> predicted(samples.size());
    std::vector<Label> actual(samples.size());
    if (scores_out) scores_out->resize(samples.size());
    double squared = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const Prediction p = forward(spec, params, samples[i].features);
        predicted[i] = p.label;
        actual[i] = samples[i].label;
        if (scores_out) (*scores_out)[i] = p.score_positive;
        const double err = target_value(samples[i].label) - p.raw;
        squared += err * err;
    }
    PhaseRecord record;
    record.cm = confusion(std::span<const Label>(predicted), std::span<const Label>(actual));
    record.metrics = derive_metrics(record.cm, squared / static_cast<double>(samples.size()));
    return record;
}

std::vector<Label> labels_of(const std::vector<BinarySample>& samples) {
    std::vector<Label> labels(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) labels[i] = samples[i].label;
    return labels;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw IoError(path, "cannot open for writing");
    out << content;
    if (!out) throw IoError(path, "write failed");
}

std::string run_prefix(const RunRecord& run) {
    return run.model + "_s" + std::to_string(run.opt_seed);
}

ordered_json phase_document(const PhaseRecord& phase, const RocCurve* roc_curve) {
    const auto opt_json = [](const std::optional<double>& v) {
        return v ? ordered_json(*v) : ordered_json(nullptr);
    };
    ordered_json j;
    j["positive_cases"] = phase.cm.positives();
    j["negative_cases"] = phase.cm.negatives();
    j["tp"] = phase.cm.tp;
    j["fp"] = phase.cm.fp;
    j["tn"] = phase.cm.tn;
    j["fn"] = phase.cm.fn;
    j["sensitivity"] = opt_json(phase.metrics.sensitivity);
    j["specificity"] = opt_json(phase.metrics.specificity);
    j["ppv"] = opt_json(phase.metrics.ppv);
    j["npv"] = opt_json(phase.metrics.npv);
    j["accuracy"] = opt_json(phase.metrics.accuracy);
    j["mse"] = phase.metrics.mse;
    if (roc_curve) j["auc"] = roc_curve->auc;
    return j;
}

ordered_json run_document(const ExperimentReport& report, const RunRecord& run) {
    const ExperimentConfig& c = report.config;
    ordered_json j;
    j["model"] = run.model;
    j["algorithm"] = algorithm_name(run.algorithm);
    j["network"] = run.cascade ? "cmlp" : "mlp";
    j["seed"] = run.opt_seed;
    j["data"] = {{"path", c.data_path},
                 {"rows", run.samples},
                 {"preprocess", preprocess_name(c.preprocess)},
                 {"feature_set", feature_set_name(c.feature_set)}};
    j["split"] = {{"mode", split_mode_name(c.split_mode)},
                  {"seed", c.split_seed},
                  {"train", report.split.train_indices.size()},
                  {"test", report.split.test_indices.size()}};
    j["topology"] = {{"inputs", run.topology.inputs},
                     {"hidden", run.topology.hidden},
                     {"outputs", run.topology.outputs},
                     {"cascade", run.topology.cascade},
                     {"dimensions", run.dimensions}};
    // The thread count is a scheduling knob, not a result, and is omitted so
    // reports reproduce bit-for-bit under one seed; run_time_seconds is the
    // single field allowed to vary.
    j["optimizer"] = {{"agents", c.agents},
                      {"iterations", c.max_iter},
                      {"wf", c.wf},
                      {"bound", c.bound},
                      {"evaluations", run.opt.evaluations},
                      {"best_mse", run.opt.best_fitness},
                      {"run_time_seconds", run.opt.elapsed_seconds}};
    j["train"] = phase_document(run.train, nullptr);
    j["test"] = phase_document(run.test, &run.test_roc);
    return j;
}

std::string summary_table(const ExperimentReport& report) {
    TextTable t;
    t.header = {"Model", "Seed", "Samples", "Dimensions", "Run time", "Training rate",
                "Testing rate"};
    t.left = {true, false, false, false, false, false, false};
    t.min_width = {0, 6, 0, 0, 13, 0, 0};
    std::vector<std::string> seen_models;
    for (const RunRecord& run : report.runs) {
        t.rows.push_back({run.model, std::to_string(run.opt_seed), std::to_string(run.samples),
                          std::to_string(run.dimensions), runtime_text(run.opt.elapsed_seconds),
                          percent_text(run.train.metrics.accuracy),
                          percent_text(run.test.metrics.accuracy)});
        if (std::find(seen_models.begin(), seen_models.end(), run.model) == seen_models.end())
            seen_models.push_back(run.model);
    }
    if (report.config.repeats > 1) {
        for (const std::string& model : seen_models) {
            std::vector<double> train_rates, test_rates, times;
            std::size_t samples = 0, dimensions = 0;
            for (const RunRecord& run : report.runs) {
                if (run.model != model) continue;
                train_rates.push_back(run.train.metrics.accuracy.value_or(0.0));
                test_rates.push_back(run.test.metrics.accuracy.value_or(0.0));
                times.push_back(run.opt.elapsed_seconds);
                samples = run.samples;
                dimensions = run.dimensions;
            }
            t.rows.push_back({model, "median", std::to_string(samples),
                              std::to_string(dimensions), runtime_text(median(times)),
                              percent_text(median(train_rates)),
                              percent_text(median(test_rates))});
        }
    }
    return t.render();
}

std::string per_class_table(const ExperimentReport& report) {
    TextTable t;
    t.header = {"Model", "Seed", "Phase", "Class", "Cases", "Correct", "Class accuracy",
                "MSE", "Rate"};
    t.left = {true, false, true, true, false, false, false, false, false};
    for (const RunRecord& run : report.runs) {
        const auto phase_rows = [&](const char* phase, const PhaseRecord& rec) {
            t.rows.push_back({run.model, std::to_string(run.opt_seed), phase, "positive",
                              std::to_string(rec.cm.positives()), std::to_string(rec.cm.tp),
                              percent_text(rec.metrics.sensitivity),
                              fixed_text(rec.metrics.mse, 6),
                              percent_text(rec.metrics.accuracy)});
            t.rows.push_back({run.model, std::to_string(run.opt_seed), phase, "negative",
                              std::to_string(rec.cm.negatives()), std::to_string(rec.cm.tn),
                              percent_text(rec.metrics.specificity), "", ""});
        };
        phase_rows("train", run.train);
        phase_rows("test", run.test);
    }
    return t.render();
}

std::string metrics_table(const ExperimentReport& report) {
    TextTable t;
    t.header = {"Model", "Seed", "Sensitivity", "Specificity", "PPV", "NPV", "Accuracy"};
    t.left = {true, false, false, false, false, false, false};
    for (const RunRecord& run : report.runs) {
        const MetricsReport& m = run.test.metrics;
        t.rows.push_back({run.model, std::to_string(run.opt_seed), metric_text(m.sensitivity),
                          metric_text(m.specificity), metric_text(m.ppv), metric_text(m.npv),
                          metric_text(m.accuracy)});
    }
    return t.render();
}

std::string metrics_csv(const ExperimentReport& report) {
    std::string out =
        "model,seed,phase,tp,fp,tn,fn,sensitivity,specificity,ppv,npv,accuracy,mse,auc\n";
    for (const RunRecord& run : report.runs) {
        const auto phase_row = [&](const char* phase, const PhaseRecord& rec,
                                   const RocCurve* roc_curve) {
            const MetricsReport& m = rec.metrics;
            out += run.model;
            out += ',' + std::to_string(run.opt_seed) + ',' + phase;
            out += ',' + std::to_string(rec.cm.tp) + ',' + std::to_string(rec.cm.fp);
            out += ',' + std::to_string(rec.cm.tn) + ',' + std::to_string(rec.cm.fn);
            out += ',' + csv_optional(m.sensitivity) + ',' + csv_optional(m.specificity);
            out += ',' + csv_optional(m.ppv) + ',' + csv_optional(m.npv);
            out += ',' + csv_optional(m.accuracy) + ',' + shortest_text(m.mse);
            out += ',';
            if (roc_curve) out += shortest_text(roc_curve->auc);
            out += '\n';
        };
        phase_row("train", run.train, nullptr);
        phase_row("test", run.test, &run.test_roc);
    }
    return out;
}

}  // namespace

std::vector<ModelSpec> standard_models() {
    return {{Algorithm::GWO, false},
            {Algorithm::MGWO, false},
            {Algorithm::GWO, true},
            {Algorithm::FDO, false},
            {Algorithm::FDO, true}};
}

std::string model_name(Algorithm algorithm, bool cascade) {
    return std::string(algorithm_name(algorithm)) + (cascade ? "_CMLP" : "_MLP");
}

std::uint64_t derive_run_seed(std::uint64_t master_seed, std::size_t repeat) {
    if (repeat == 0) return master_seed;
    return splitmix64(master_seed + static_cast<std::uint64_t>(repeat));
}

ExperimentReport run_suite(const ExperimentConfig& config,
                           const std::vector<ModelSpec>& models) {
    if (config.data_path.empty()) throw MissingDataPathError();
    if (models.empty()) throw EmptyInputError("model list");
    if (config.repeats == 0) throw InvalidValueError("repeats", "must be positive");
    if (!(config.bound > 0.0)) throw InvalidValueError("bound", "must be positive");

    const char delimiter =
        config.delimiter != '\0' ? config.delimiter : detect_delimiter(config.data_path);
    const std::vector<RawRecord> records = load_raw(config.data_path, delimiter);
    const std::vector<BinarySample> samples =
        preprocess(records, config.preprocess, config.feature_set);
    if (samples.empty()) throw EmptyInputError("dataset");

    ExperimentReport report;
    report.config = config;
    report.split = split(samples, config.split_mode, config.split_seed);
    const std::vector<Label> test_labels = labels_of(report.split.test);

    for (const ModelSpec& model : models) {
        const TopologySpec spec = TopologySpec::make(samples.front().features.size(),
                                                     model.cascade, config.hidden_override);
        const Objective objective(spec, report.split.train);
        const ObjectiveFn fn = [&objective](std::span<const double> p) { return objective(p); };
        const SearchSpace space = SearchSpace::symmetric(param_count(spec), config.bound);

        for (std::size_t repeat = 0; repeat < config.repeats; ++repeat) {
            OptimizerRunConfig run_config;
            run_config.algorithm = model.algorithm;
            run_config.agents = config.agents;
            run_config.max_iter = config.max_iter;
            run_config.seed = derive_run_seed(config.seed, repeat);
            run_config.wf = config.wf;
            run_config.threads = config.threads;

            RunRecord run;
            run.model = model_name(model.algorithm, model.cascade);
            run.algorithm = model.algorithm;
            run.cascade = model.cascade;
            run.opt_seed = run_config.seed;
            run.topology = spec;
            run.samples = samples.size();
            run.dimensions = param_count(spec);
            run.opt = optimize(fn, space, run_config);
            run.train = evaluate_phase(spec, run.opt.best_position, report.split.train, nullptr);
            std::vector<double> test_scores;
            run.test = evaluate_phase(spec, run.opt.best_position, report.split.test,
                                      &test_scores);
            run.test_roc = roc(test_scores, test_labels);
            report.runs.push_back(std::move(run));
        }
    }
    return report;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    return run_suite(config, {{config.algorithm, config.cascade}});
}

const std::set<std::string>& known_formats() {
    static const std::set<std::string> kFormats = {"tables", "json",  "csv",
                                                   "svg",    "model", "manifest"};
    return kFormats;
}

std::vector<std::string> emit_reports(const ExperimentReport& report,
                                      const std::set<std::string>& formats) {
    for (const std::string& format : formats) {
        if (!known_formats().contains(format))
            throw InvalidValueError("formats", "unknown format: " + format);
    }
    std::vector<std::string> created;
    if (formats.empty()) return created;

    const fs::path dir(report.config.out_dir.empty() ? "." : report.config.out_dir);
    const auto target = [&](const std::string& name) { return (dir / name).string(); };

    try {
        fs::create_directories(dir);
        if (formats.contains("tables")) {
            created.push_back(target("table1.txt"));
            write_text(created.back(), summary_table(report));
            created.push_back(target("table2.txt"));
            write_text(created.back(), per_class_table(report));
            created.push_back(target("table3.txt"));
            write_text(created.back(), metrics_table(report));
        }
        if (formats.contains("csv")) {
            created.push_back(target("metrics.csv"));
            write_text(created.back(), metrics_csv(report));
            for (const RunRecord& run : report.runs) {
                created.push_back(target(run_prefix(run) + "_history.csv"));
                write_history_csv(created.back(), run.opt);
                created.push_back(target(run_prefix(run) + "_roc.csv"));
                write_roc_csv(created.back(), run.test_roc);
            }
        }
        if (formats.contains("json")) {
            for (const RunRecord& run : report.runs) {
                created.push_back(target(run_prefix(run) + ".json"));
                write_text(created.back(), run_document(report, run).dump(2) + "\n");
            }
        }
        if (formats.contains("svg")) {
            for (const RunRecord& run : report.runs) {
                created.push_back(target(run_prefix(run) + "_roc.svg"));
                write_roc_svg(created.back(), run.test_roc, run_prefix(run));
            }
        }
        if (formats.contains("model")) {
            for (const RunRecord& run : report.runs) {
                created.push_back(target(run_prefix(run) + ".model"));
                save_model(created.back(), run.topology, run.opt.best_position);
            }
        }
        if (formats.contains("manifest")) {
            created.push_back(target("split_manifest.txt"));
            write_split_manifest(created.back(), report.split);
        }
    } catch (...) {
        for (const std::string& path : created) {
            std::error_code ec;
            fs::remove(path, ec);
        }
        throw;
    }
    return created;
}

EvaluationOutcome evaluate_saved_model(const std::string& data_path, char delimiter,
                                       PreprocessMode preprocess_mode, FeatureSet feature_set,
                                       const std::string& model_path,
                                       const std::string& manifest_path) {
    const char delim = delimiter != '\0' ? delimiter : detect_delimiter(data_path);
    const std::vector<RawRecord> records = load_raw(data_path, delim);
    const std::vector<BinarySample> samples = preprocess(records, preprocess_mode, feature_set);
    if (samples.empty()) throw EmptyInputError("dataset");

    auto [spec, params] = load_model(model_path);
    if (spec.inputs != samples.front().features.size())
        throw DimensionMismatchError("model inputs", spec.inputs,
                                     samples.front().features.size());

    const auto [train_indices, test_indices] = load_split_manifest(manifest_path);
    const auto gather = [&](const std::vector<std::size_t>& indices) {
        std::vector<BinarySample> subset;
        subset.reserve(indices.size());
        for (std::size_t i : indices) {
            if (i >= samples.size())
                throw InvalidValueError("manifest", "row index out of range");
            subset.push_back(samples[i]);
        }
        return subset;
    };
    const std::vector<BinarySample> train = gather(train_indices);
    const std::vector<BinarySample> test = gather(test_indices);
    if (train.empty() || test.empty()) throw EmptyInputError("split manifest");

    EvaluationOutcome outcome;
    outcome.topology = spec;
    outcome.train = evaluate_phase(spec, params, train, nullptr);
    std::vector<double> test_scores;
    outcome.test = evaluate_phase(spec, params, test, &test_scores);
    outcome.test_roc = roc(test_scores, labels_of(test));
    return outcome;
}

}  // namespace platenet
