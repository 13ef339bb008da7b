#include "platenet/network.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "platenet/errors.hpp"

namespace platenet {

namespace {

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Raw network output for a single-output topology; the hot path shared by
// forward() and the objective. x points at `inputs` contiguous values.
double raw_output(const TopologySpec& spec, const double* p, const double* x) {
    const std::size_t ni = spec.inputs;
    const std::size_t nh = spec.hidden;
    const double* w_ih = p;
    const double* b_h = p + ni * nh;
    const double* w_ho = b_h + nh;
    const double* b_o = w_ho + nh;

    double y = b_o[0];
    for (std::size_t j = 0; j < nh; ++j) {
        const double* wrow = w_ih + j * ni;
        double z = b_h[j];
        for (std::size_t i = 0; i < ni; ++i) z += wrow[i] * x[i];
        y += w_ho[j] * sigmoid(z);
    }
    if (spec.cascade) {
        const double* w_io = b_o + spec.outputs;
        for (std::size_t i = 0; i < ni; ++i) y += w_io[i] * x[i];
    }
    return y;
}

}  // namespace

std::size_t hidden_size(std::size_t inputs) { return 2 * inputs + 1; }

TopologySpec TopologySpec::make(std::size_t inputs, bool cascade, std::size_t hidden_override) {
    TopologySpec spec;
    spec.inputs = inputs;
    spec.hidden = hidden_override == 0 ? hidden_size(inputs) : hidden_override;
    spec.outputs = 1;
    spec.cascade = cascade;
    return spec;
}

std::size_t param_count(const TopologySpec& spec) {
    std::size_t n = spec.inputs * spec.hidden + spec.hidden + spec.hidden * spec.outputs +
                    spec.outputs;
    if (spec.cascade) n += spec.inputs * spec.outputs;
    return n;
}

ParamVector encode(const TopologySpec& spec, const NetworkWeights& w) {
    if (w.input_hidden.size() != spec.inputs * spec.hidden) {
        throw DimensionMismatchError("input_hidden", spec.inputs * spec.hidden,
                                     w.input_hidden.size());
    }
    if (w.hidden_bias.size() != spec.hidden) {
        throw DimensionMismatchError("hidden_bias", spec.hidden, w.hidden_bias.size());
    }
    if (w.hidden_output.size() != spec.hidden * spec.outputs) {
        throw DimensionMismatchError("hidden_output", spec.hidden * spec.outputs,
                                     w.hidden_output.size());
    }
    if (w.output_bias.size() != spec.outputs) {
        throw DimensionMismatchError("output_bias", spec.outputs, w.output_bias.size());
    }
    const std::size_t cascade_count = spec.cascade ? spec.inputs * spec.outputs : 0;
    if (w.input_output.size() != cascade_count) {
        throw DimensionMismatchError("input_output", cascade_count, w.input_output.size());
    }

    ParamVector params;
    params.reserve(param_count(spec));
    params.insert(params.end(), w.input_hidden.begin(), w.input_hidden.end());
    params.insert(params.end(), w.hidden_bias.begin(), w.hidden_bias.end());
    params.insert(params.end(), w.hidden_output.begin(), w.hidden_output.end());
    params.insert(params.end(), w.output_bias.begin(), w.output_bias.end());
    params.insert(params.end(), w.input_output.begin(), w.input_output.end());
    return params;
}

NetworkWeights decode(const TopologySpec& spec, const ParamVector& params) {
    if (params.size() != param_count(spec)) {
        throw DimensionMismatchError("params", param_count(spec), params.size());
    }
    NetworkWeights w;
    auto it = params.begin();
    w.input_hidden.assign(it, it + spec.inputs * spec.hidden);
    it += spec.inputs * spec.hidden;
    w.hidden_bias.assign(it, it + spec.hidden);
    it += spec.hidden;
    w.hidden_output.assign(it, it + spec.hidden * spec.outputs);
    it += spec.hidden * spec.outputs;
    w.output_bias.assign(it, it + spec.outputs);
    it += spec.outputs;
    if (spec.cascade) w.input_output.assign(it, it + spec.inputs * spec.outputs);
    return w;
}

Prediction classify(double raw) {
    Prediction p;
    p.raw = raw;
    // midpoint of the 1/2 target encoding; the tie goes to Negative
    p.label = raw < 1.5 ? Label::Positive : Label::Negative;
    p.score_positive = 2.0 - raw;
    return p;
}

std::vector<double> forward_outputs(const TopologySpec& spec, std::span<const double> params,
                                    std::span<const double> x) {
    if (x.size() != spec.inputs) throw DimensionMismatchError("inputs", spec.inputs, x.size());
    if (params.size() != param_count(spec)) {
        throw DimensionMismatchError("params", param_count(spec), params.size());
    }
    const std::size_t ni = spec.inputs;
    const std::size_t nh = spec.hidden;
    const std::size_t no = spec.outputs;
    const double* p = params.data();
    const double* w_ih = p;
    const double* b_h = w_ih + ni * nh;
    const double* w_ho = b_h + nh;
    const double* b_o = w_ho + nh * no;
    const double* w_io = b_o + no;

    std::vector<double> hidden(nh);
    for (std::size_t j = 0; j < nh; ++j) {
        const double* wrow = w_ih + j * ni;
        double z = b_h[j];
        for (std::size_t i = 0; i < ni; ++i) z += wrow[i] * x[i];
        hidden[j] = sigmoid(z);
    }

    std::vector<double> out(no);
    for (std::size_t o = 0; o < no; ++o) {
        double y = b_o[o];
        const double* vrow = w_ho + o * nh;
        for (std::size_t j = 0; j < nh; ++j) y += vrow[j] * hidden[j];
        if (spec.cascade) {
            const double* urow = w_io + o * ni;
            for (std::size_t i = 0; i < ni; ++i) y += urow[i] * x[i];
        }
        out[o] = y;
    }
    return out;
}

Prediction forward(const TopologySpec& spec, std::span<const double> params,
                   std::span<const double> x) {
    if (spec.outputs != 1) throw DimensionMismatchError("outputs", 1, spec.outputs);
    if (x.size() != spec.inputs) throw DimensionMismatchError("inputs", spec.inputs, x.size());
    if (params.size() != param_count(spec)) {
        throw DimensionMismatchError("params", param_count(spec), params.size());
    }
    return classify(raw_output(spec, params.data(), x.data()));
}

double mse(const TopologySpec& spec, std::span<const double> params,
           const std::vector<BinarySample>& samples) {
    if (samples.empty()) throw EmptyInputError("mse");
    if (spec.outputs != 1) throw DimensionMismatchError("outputs", 1, spec.outputs);
    if (params.size() != param_count(spec)) {
        throw DimensionMismatchError("params", param_count(spec), params.size());
    }
    double sum = 0.0;
    for (const BinarySample& s : samples) {
        if (s.features.size() != spec.inputs) {
            throw DimensionMismatchError("inputs", spec.inputs, s.features.size());
        }
        const double err = target_value(s.label) - raw_output(spec, params.data(), s.features.data());
        sum += err * err;
    }
    return sum / static_cast<double>(samples.size());
}

Objective::Objective(TopologySpec spec, const std::vector<BinarySample>& training)
    : spec_(spec), count_(training.size()) {
    if (training.empty()) throw EmptyInputError("objective");
    if (spec_.outputs != 1) throw DimensionMismatchError("outputs", 1, spec_.outputs);
    features_.reserve(count_ * spec_.inputs);
    targets_.reserve(count_);
    for (const BinarySample& s : training) {
        if (s.features.size() != spec_.inputs) {
            throw DimensionMismatchError("inputs", spec_.inputs, s.features.size());
        }
        features_.insert(features_.end(), s.features.begin(), s.features.end());
        targets_.push_back(target_value(s.label));
    }
}

double Objective::operator()(std::span<const double> params) const {
    if (params.size() != param_count(spec_)) {
        throw DimensionMismatchError("params", param_count(spec_), params.size());
    }
    const double* p = params.data();
    double sum = 0.0;
    for (std::size_t s = 0; s < count_; ++s) {
        const double err = targets_[s] - raw_output(spec_, p, features_.data() + s * spec_.inputs);
        sum += err * err;
    }
    return sum / static_cast<double>(count_);
}

void save_model(const std::string& path, const TopologySpec& spec, const ParamVector& params) {
    if (params.size() != param_count(spec)) {
        throw DimensionMismatchError("params", param_count(spec), params.size());
    }
    std::ofstream out(path);
    if (!out) throw IoError(path, "cannot open for writing");
    out << "platenet-model v1\n";
    out << "inputs " << spec.inputs << '\n';
    out << "hidden " << spec.hidden << '\n';
    out << "outputs " << spec.outputs << '\n';
    out << "cascade " << (spec.cascade ? 1 : 0) << '\n';
    out << "params " << params.size() << '\n';
    char buf[64];
    for (double v : params) {
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
        out.write(buf, ptr - buf);
        out << '\n';
    }
    if (!out) throw IoError(path, "write failed");
}

std::pair<TopologySpec, ParamVector> load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MissingFileError(path);
    std::string magic, version, key;
    if (!(in >> magic >> version) || magic != "platenet-model" || version != "v1") {
        throw IoError(path, "not a platenet model file");
    }
    TopologySpec spec;
    std::size_t count = 0;
    int cascade = 0;
    if (!(in >> key >> spec.inputs) || key != "inputs") throw IoError(path, "bad inputs line");
    if (!(in >> key >> spec.hidden) || key != "hidden") throw IoError(path, "bad hidden line");
    if (!(in >> key >> spec.outputs) || key != "outputs") throw IoError(path, "bad outputs line");
    if (!(in >> key >> cascade) || key != "cascade") throw IoError(path, "bad cascade line");
    spec.cascade = cascade != 0;
    if (!(in >> key >> count) || key != "params") throw IoError(path, "bad params line");
    if (count != param_count(spec)) throw IoError(path, "parameter count does not match shape");
    ParamVector params(count);
    std::string token;
    for (double& v : params) {
        if (!(in >> token)) throw IoError(path, "truncated parameter list");
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (ec != std::errc{} || ptr != token.data() + token.size()) {
            throw IoError(path, "bad parameter value: " + token);
        }
    }
    return {spec, std::move(params)};
}

}  // namespace platenet
