#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "platenet/rng.hpp"

namespace platenet {

enum class Algorithm { GWO, MGWO, FDO };

const char* algorithm_name(Algorithm a);

/// Box-bounded search domain.
struct SearchSpace {
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t dim() const { return lower.size(); }
    static SearchSpace symmetric(std::size_t dim, double bound);
};

struct OptimizerRunConfig {
    Algorithm algorithm = Algorithm::GWO;
    std::size_t agents = 10;
    std::size_t max_iter = 50;
    std::uint64_t seed = 1;
    int wf = 0;              // pace weight factor, 0 or 1; FDO only
    std::size_t threads = 1; // objective evaluation parallelism; never changes results
};

struct AgentState {
    std::vector<double> position;
    double fitness = 0.0;
};

struct OptRun {
    std::vector<double> best_position;
    double best_fitness = 0.0;
    /// (iteration, best-so-far fitness); entry 0 is the initial population.
    std::vector<std::pair<std::size_t, double>> history;
    std::size_t evaluations = 0;
    double elapsed_seconds = 0.0;
};

using ObjectiveFn = std::function<double(std::span<const double>)>;

/// Draw every coordinate uniformly within the bounds, then evaluate each
/// agent once. All draws happen sequentially in agent order.
std::vector<AgentState> initialize(const ObjectiveFn& objective, const SearchSpace& space,
                                   std::size_t agents, Rng& rng, std::size_t threads = 1);

/// Step-size control coefficient: decays linearly from 2 at t=0 to 0 at
/// t=max_iter.
double gwo_a(std::size_t t, std::size_t max_iter);

/// One grey-wolf update: the three best wolves of the current population
/// lead; every wolf moves to the mean of three randomized encircling steps,
/// is clamped to the bounds, and is re-evaluated. Random draws happen in a
/// fixed order (wolf, then coordinate, then leader) before any evaluation.
void gwo_iterate(std::vector<AgentState>& population, const ObjectiveFn& objective,
                 const SearchSpace& space, std::size_t t, std::size_t max_iter, Rng& rng,
                 std::size_t threads = 1);

/// Grey-wolf update with a fourth leader tier; wolves average four candidate
/// positions. With exactly 4 agents the fourth leader duplicates the third.
void mgwo_iterate(std::vector<AgentState>& population, const ObjectiveFn& objective,
                  const SearchSpace& space, std::size_t t, std::size_t max_iter, Rng& rng,
                  std::size_t threads = 1);

/// Pace weight: |best / current| - wf. Callers must keep current != 0.
double fitness_weight(double best_fitness, double current_fitness, int wf);

/// Scout-bee displacement for one agent, given its per-coordinate random
/// draws r in [-1, 1]. Routes to a scaled random walk unless the fitness
/// weight falls strictly between 0 and 1, in which case the step runs along
/// the line to the global best with a sign chosen by r.
std::vector<double> fdo_pace(std::span<const double> position,
                             std::span<const double> best_position, double fitness,
                             double best_fitness, int wf, std::span<const double> r);

/// One scout-bee update: each agent proposes position + pace (clamped),
/// keeps it only if strictly better, and the global best is refreshed as
/// soon as an agent improves on it.
void fdo_iterate(std::vector<AgentState>& population, const ObjectiveFn& objective,
                 const SearchSpace& space, AgentState& global_best, Rng& rng, int wf);

/// Run the configured algorithm with global-best elitism. Deterministic in
/// (objective, space, config); throws NonFiniteFitness if the objective
/// returns NaN or infinity.
OptRun optimize(const ObjectiveFn& objective, const SearchSpace& space,
                const OptimizerRunConfig& config);

/// Comma-separated (iteration, best_fitness) pairs.
void write_history_csv(const std::string& path, const OptRun& run);

}  // namespace platenet
