#include "platenet/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "platenet/benchmarks.hpp"
#include "platenet/errors.hpp"
#include "platenet/synthetic.hpp"

namespace platenet {

namespace {

PreprocessMode to_preprocess(const std::string& s) {
    return s == "sign" ? PreprocessMode::SignBinarize : PreprocessMode::MinMax;
}

FeatureSet to_features(const std::string& s) {
    return s == "indicators33" ? FeatureSet::WithIndicators33 : FeatureSet::Base27;
}

SplitMode to_split(const std::string& s) {
    return s == "paper-counts" ? SplitMode::PaperCounts : SplitMode::Ratio80_20;
}

char to_delimiter(const std::string& s) {
    if (s == "tab") return '\t';
    if (s == "comma") return ',';
    return '\0';
}

Algorithm to_algorithm(const std::string& s) {
    if (s == "mgwo") return Algorithm::MGWO;
    if (s == "fdo") return Algorithm::FDO;
    return Algorithm::GWO;
}

std::set<std::string> parse_formats(const std::string& csv) {
    std::set<std::string> formats;
    if (csv.empty() || csv == "none") return formats;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const std::size_t comma = csv.find(',', start);
        const std::string token =
            csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (token.empty()) throw InvalidValueError("formats", "empty format name");
        if (!known_formats().contains(token))
            throw InvalidValueError("formats", "unknown format: " + token);
        formats.insert(token);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return formats;
}

std::string all_formats_csv() {
    std::string csv;
    for (const std::string& f : known_formats()) {
        if (!csv.empty()) csv += ',';
        csv += f;
    }
    return csv;
}

/// String-typed staging area for CLI11; converted to typed config after parse.
struct RawExperimentFlags {
    std::string delimiter = "auto";
    std::string preprocess = "minmax";
    std::string features = "base27";
    std::string split = "ratio";
    std::string model = "mlp";
    std::string algorithm = "gwo";
    std::string formats = all_formats_csv();
    std::string config_path;
};

/// Shared training/evaluation data flags.
void add_data_options(CLI::App* cmd, ExperimentConfig& config, RawExperimentFlags& raw) {
    cmd->add_option("--data", config.data_path, "input table of plate records")
        ->capture_default_str();
    cmd->add_option("--delimiter", raw.delimiter, "field separator of the input file")
        ->check(CLI::IsMember({"auto", "tab", "comma"}))
        ->capture_default_str();
    cmd->add_option("--preprocess", raw.preprocess, "feature scaling scheme")
        ->check(CLI::IsMember({"minmax", "sign"}))
        ->capture_default_str();
    cmd->add_option("--features", raw.features, "input feature set")
        ->check(CLI::IsMember({"base27", "indicators33"}))
        ->capture_default_str();
}

void add_experiment_options(CLI::App* cmd, ExperimentConfig& config, RawExperimentFlags& raw,
                            bool single_model) {
    add_data_options(cmd, config, raw);
    cmd->add_option("--split", raw.split, "train/test partition scheme")
        ->check(CLI::IsMember({"ratio", "paper-counts"}))
        ->capture_default_str();
    cmd->add_option("--split-seed", config.split_seed, "seed for the partition shuffle")
        ->capture_default_str();
    if (single_model) {
        cmd->add_option("--model", raw.model, "network shape")
            ->check(CLI::IsMember({"mlp", "cmlp"}))
            ->capture_default_str();
        cmd->add_option("--algorithm", raw.algorithm, "training optimizer")
            ->check(CLI::IsMember({"gwo", "mgwo", "fdo"}))
            ->capture_default_str();
    }
    cmd->add_option("--hidden", config.hidden_override,
                    "hidden units; 0 derives 2*inputs+1")
        ->capture_default_str();
    cmd->add_option("--agents", config.agents, "search agents")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--iterations", config.max_iter, "optimizer iterations")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--seed", config.seed, "master optimizer seed")->capture_default_str();
    cmd->add_option("--wf", config.wf, "FDO weight factor")
        ->check(CLI::Range(0, 1))
        ->capture_default_str();
    cmd->add_option("--bound", config.bound, "symmetric weight bound")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--out", config.out_dir, "report directory")
        ->envname("PLATENET_OUT")
        ->capture_default_str();
    cmd->add_option("--repeats", config.repeats, "independent runs per model")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--threads", config.threads, "objective evaluation threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--formats", raw.formats,
                    "comma-separated artifact families; 'none' writes nothing")
        ->capture_default_str();
    cmd->add_option("--config", raw.config_path, "flat key = value option file");
    cmd->allow_config_extras(CLI::config_extras_mode::error);
}

/// Applies a key = value option file to a parsed subcommand. Flags given on
/// the command line keep their values; the file only fills in the rest.
void apply_option_file(CLI::App* cmd, const std::string& path) {
    std::ifstream file(path);
    if (!file) throw MissingFileError(path);
    cmd->parse_from_stream(file);
}

std::string percent(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f %%", v * 100.0);
    return buf;
}

void print_run_lines(const ExperimentReport& report, std::ostream& out) {
    for (const RunRecord& run : report.runs) {
        char line[256];
        std::snprintf(line, sizeof(line),
                      "%-9s seed %-6llu dim %-5zu train %s  test %s  mse %.6f  %.3fs\n",
                      run.model.c_str(), static_cast<unsigned long long>(run.opt_seed),
                      run.dimensions, percent(run.train.metrics.accuracy.value_or(0.0)).c_str(),
                      percent(run.test.metrics.accuracy.value_or(0.0)).c_str(),
                      run.test.metrics.mse, run.opt.elapsed_seconds);
        out << line;
    }
}

void print_outcome(const EvaluationOutcome& outcome, std::ostream& out) {
    const TopologySpec& t = outcome.topology;
    out << "topology: inputs " << t.inputs << ", hidden " << t.hidden << ", outputs "
        << t.outputs << (t.cascade ? ", cascade" : "") << ", dimensions " << param_count(t)
        << '\n';
    const auto phase = [&](const char* name, const PhaseRecord& rec) {
        out << name << ": tp " << rec.cm.tp << "  fp " << rec.cm.fp << "  tn " << rec.cm.tn
            << "  fn " << rec.cm.fn << "  accuracy "
            << (rec.metrics.accuracy ? percent(*rec.metrics.accuracy) : "n/a") << "  mse ";
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6f", rec.metrics.mse);
        out << buf << '\n';
    };
    phase("train", outcome.train);
    phase("test", outcome.test);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", outcome.test_roc.auc);
    out << "test auc: " << buf << '\n';
}

int run_bench(const BenchOptions& options, std::ostream& out) {
    std::vector<Algorithm> algorithms;
    if (options.algorithm == "all")
        algorithms = {Algorithm::GWO, Algorithm::MGWO, Algorithm::FDO};
    else
        algorithms = {to_algorithm(options.algorithm)};

    out << "function     algorithm  seed      best fitness  evaluations\n";
    out << "-----------------------------------------------------------\n";
    for (const BenchmarkFunction& f : benchmark_suite(options.dimension)) {
        if (options.function != "all" && options.function != f.name) continue;
        const SearchSpace space{std::vector<double>(f.dimension, f.lower),
                                std::vector<double>(f.dimension, f.upper)};
        for (Algorithm algorithm : algorithms) {
            std::vector<double> bests;
            for (std::size_t repeat = 0; repeat < options.repeats; ++repeat) {
                OptimizerRunConfig config;
                config.algorithm = algorithm;
                config.agents = options.agents;
                config.max_iter = options.max_iter;
                config.seed = derive_run_seed(options.seed, repeat);
                const OptRun run = optimize(f.evaluate, space, config);
                bests.push_back(run.best_fitness);
                char line[160];
                std::snprintf(line, sizeof(line), "%-12s %-10s %-8llu %13.6e %12zu\n",
                              f.name.c_str(), algorithm_name(algorithm),
                              static_cast<unsigned long long>(config.seed), run.best_fitness,
                              run.evaluations);
                out << line;
            }
            if (options.repeats > 1) {
                std::sort(bests.begin(), bests.end());
                const std::size_t n = bests.size();
                const double med = n % 2 == 1 ? bests[n / 2]
                                              : 0.5 * (bests[n / 2 - 1] + bests[n / 2]);
                char line[160];
                std::snprintf(line, sizeof(line), "%-12s %-10s %-8s %13.6e\n", f.name.c_str(),
                              algorithm_name(algorithm), "median", med);
                out << line;
            }
        }
    }
    return 0;
}

}  // namespace

CliRequest parse_config(const std::vector<std::string>& args) {
    CliRequest request;
    RawExperimentFlags raw;
    std::string eval_delimiter = "auto";
    std::string eval_preprocess = "minmax";
    std::string eval_features = "base27";
    std::string synth_delimiter = "tab";

    CLI::App app{"swarm-trained neural classifiers for steel-plate fault records"};
    app.require_subcommand(0, 1);

    CLI::App* train = app.add_subcommand("train", "train one model and emit reports");
    add_experiment_options(train, request.experiment, raw, true);

    CLI::App* suite = app.add_subcommand(
        "paper", "train the preset five-model suite (GWO/MGWO/FDO x MLP/CMLP)");
    suite->alias("suite");
    add_experiment_options(suite, request.experiment, raw, false);

    CLI::App* bench = app.add_subcommand("bench", "run optimizers on analytic test functions");
    bench->add_option("--function", request.bench.function, "test function")
        ->check(CLI::IsMember({"sphere", "rosenbrock", "rastrigin", "all"}))
        ->capture_default_str();
    bench->add_option("--algorithm", request.bench.algorithm, "optimizer")
        ->check(CLI::IsMember({"gwo", "mgwo", "fdo", "all"}))
        ->capture_default_str();
    bench->add_option("--dim", request.bench.dimension, "problem dimensionality")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench->add_option("--agents", request.bench.agents, "search agents")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench->add_option("--iterations", request.bench.max_iter, "optimizer iterations")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench->add_option("--seed", request.bench.seed, "master seed")->capture_default_str();
    bench->add_option("--repeats", request.bench.repeats, "runs per pairing")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    CLI::App* eval = app.add_subcommand("eval", "re-score a saved model against a saved split");
    add_data_options(eval, request.experiment, raw);
    eval->add_option("--model-file", request.eval.model_path, "persisted model")->required();
    eval->add_option("--manifest", request.eval.manifest_path, "persisted split manifest")
        ->required();

    CLI::App* synth = app.add_subcommand("synth", "write a deterministic synthetic data file");
    synth->add_option("--out-file", request.synth.out_path, "destination path")
        ->capture_default_str();
    synth->add_option("--seed", request.synth.seed, "generator seed")->capture_default_str();
    synth->add_option("--delimiter", synth_delimiter, "field separator")
        ->check(CLI::IsMember({"tab", "comma"}))
        ->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
        if (!raw.config_path.empty()) {
            CLI::App* cmd = train->parsed() ? train : suite;
            apply_option_file(cmd, raw.config_path);
        }
    } catch (const CLI::CallForHelp&) {
        request.help = true;
        request.help_text = app.help("", CLI::AppFormatMode::All);
        return request;
    } catch (const CLI::CallForAllHelp&) {
        request.help = true;
        request.help_text = app.help("", CLI::AppFormatMode::All);
        return request;
    } catch (const CLI::ExtrasError& e) {
        throw UnknownFlagError(e.what());
    } catch (const CLI::ConversionError& e) {
        throw InvalidValueError("argument", e.what());
    } catch (const CLI::ValidationError& e) {
        throw InvalidValueError("argument", e.what());
    } catch (const CLI::RequiredError& e) {
        throw InvalidValueError("argument", e.what());
    } catch (const CLI::ParseError& e) {
        throw UnknownFlagError(e.what());
    }

    request.experiment.delimiter = to_delimiter(raw.delimiter);
    request.experiment.preprocess = to_preprocess(raw.preprocess);
    request.experiment.feature_set = to_features(raw.features);
    request.experiment.split_mode = to_split(raw.split);
    request.experiment.cascade = raw.model == "cmlp";
    request.experiment.algorithm = to_algorithm(raw.algorithm);
    request.formats = parse_formats(raw.formats);

    request.eval.data_path = request.experiment.data_path;
    request.eval.delimiter = request.experiment.delimiter;
    request.eval.preprocess = request.experiment.preprocess;
    request.eval.feature_set = request.experiment.feature_set;
    request.synth.delimiter = to_delimiter(synth_delimiter);

    if (train->parsed()) request.command = Command::Train;
    else if (suite->parsed()) request.command = Command::Suite;
    else if (bench->parsed()) request.command = Command::Bench;
    else if (eval->parsed()) request.command = Command::Eval;
    else if (synth->parsed()) request.command = Command::Synth;
    else {
        request.help = true;
        request.help_text = app.help();
    }
    return request;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        CliRequest request = parse_config(args);
        if (request.help) {
            out << request.help_text;
            return 0;
        }
        switch (request.command) {
            case Command::Train:
            case Command::Suite: {
                const std::vector<ModelSpec> models =
                    request.command == Command::Train
                        ? std::vector<ModelSpec>{{request.experiment.algorithm,
                                                  request.experiment.cascade}}
                        : standard_models();
                const ExperimentReport report = run_suite(request.experiment, models);
                print_run_lines(report, out);
                const std::vector<std::string> files = emit_reports(report, request.formats);
                if (!files.empty())
                    out << "wrote " << files.size() << " report files to "
                        << request.experiment.out_dir << '\n';
                return 0;
            }
            case Command::Bench:
                return run_bench(request.bench, out);
            case Command::Eval: {
                const EvaluationOutcome outcome = evaluate_saved_model(
                    request.eval.data_path, request.eval.delimiter, request.eval.preprocess,
                    request.eval.feature_set, request.eval.model_path,
                    request.eval.manifest_path);
                print_outcome(outcome, out);
                return 0;
            }
            case Command::Synth: {
                const std::vector<RawRecord> records = synthetic_records(request.synth.seed);
                write_delimited(request.synth.out_path, records, request.synth.delimiter);
                std::size_t positive = 0;
                for (const RawRecord& r : records)
                    positive += r.fault() != FaultClass::OtherFaults ? 1 : 0;
                out << "wrote " << records.size() << " rows (" << positive << " positive / "
                    << records.size() - positive << " negative) to " << request.synth.out_path
                    << '\n';
                return 0;
            }
            case Command::None:
                return 0;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace platenet
