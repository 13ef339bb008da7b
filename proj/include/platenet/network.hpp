#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "platenet/dataset.hpp"

namespace platenet {

/// Single-hidden-layer feed-forward shape. The cascade variant adds direct
/// input-to-output connections on top of the shared layers.
struct TopologySpec {
    std::size_t inputs = 0;
    std::size_t hidden = 0;
    std::size_t outputs = 1;
    bool cascade = false;

    /// hidden_override of 0 applies the default sizing rule.
    static TopologySpec make(std::size_t inputs, bool cascade, std::size_t hidden_override = 0);
};

/// Default hidden-layer sizing rule: twice the input count plus one.
std::size_t hidden_size(std::size_t inputs);

/// Flat parameter vector the optimizers search over. Fixed layout:
/// input-to-hidden weights (row-major by hidden unit), hidden biases,
/// hidden-to-output weights (row-major by output), output biases, and,
/// for cascade networks, input-to-output weights (row-major by output).
using ParamVector = std::vector<double>;

std::size_t param_count(const TopologySpec& spec);

/// Structured view of the same parameters, for encoding/decoding tests and
/// readable construction.
struct NetworkWeights {
    std::vector<double> input_hidden;   // hidden x inputs
    std::vector<double> hidden_bias;    // hidden
    std::vector<double> hidden_output;  // outputs x hidden
    std::vector<double> output_bias;    // outputs
    std::vector<double> input_output;   // outputs x inputs, cascade only
};

ParamVector encode(const TopologySpec& spec, const NetworkWeights& w);
NetworkWeights decode(const TopologySpec& spec, const ParamVector& params);

struct Prediction {
    double raw = 0.0;
    Label label = Label::Negative;
    /// Positive-class confidence score, strictly decreasing in raw.
    double score_positive = 0.0;
};

Prediction classify(double raw_output);

/// Sigmoid hidden layer, linear output. Requires a single output unit.
Prediction forward(const TopologySpec& spec, std::span<const double> params,
                   std::span<const double> x);

/// All output units; used by forward and by multi-output topologies.
std::vector<double> forward_outputs(const TopologySpec& spec, std::span<const double> params,
                                    std::span<const double> x);

/// Mean squared error of the network against the 1/2 target encoding.
double mse(const TopologySpec& spec, std::span<const double> params,
           const std::vector<BinarySample>& samples);

/// Training objective over a fixed sample set. Flattens the features once;
/// evaluation is pure, re-entrant, and bit-deterministic.
class Objective {
public:
    Objective(TopologySpec spec, const std::vector<BinarySample>& training);

    double operator()(std::span<const double> params) const;

    const TopologySpec& spec() const { return spec_; }
    std::size_t sample_count() const { return count_; }

private:
    TopologySpec spec_;
    std::size_t count_;
    std::vector<double> features_;  // count x inputs, row-major
    std::vector<double> targets_;
};

/// Self-describing text persistence; parameters round-trip exactly.
void save_model(const std::string& path, const TopologySpec& spec, const ParamVector& params);
std::pair<TopologySpec, ParamVector> load_model(const std::string& path);

}  // namespace platenet
