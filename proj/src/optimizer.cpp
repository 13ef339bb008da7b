#include "platenet/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <numeric>

#include "platenet/errors.hpp"

namespace platenet {

namespace {

void evaluate_range(std::vector<AgentState>& population, const ObjectiveFn& objective,
                    std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i)
        population[i].fitness = objective(population[i].position);
}

/// Evaluate every agent against its current position. Agents are independent
/// here, so the work may be sliced across threads without changing any result.
void evaluate_all(std::vector<AgentState>& population, const ObjectiveFn& objective,
                  std::size_t threads) {
    const std::size_t n = population.size();
    const std::size_t workers = std::min(std::max<std::size_t>(threads, 1), n);
    if (workers <= 1) {
        evaluate_range(population, objective, 0, n);
        return;
    }
    std::vector<std::future<void>> slices;
    slices.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = n * w / workers;
        const std::size_t hi = n * (w + 1) / workers;
        slices.push_back(std::async(std::launch::async, [&population, &objective, lo, hi] {
            evaluate_range(population, objective, lo, hi);
        }));
    }
    for (auto& slice : slices) slice.get();
}

/// Positions of the `count` best agents, ties broken by index. Copies are
/// taken so that in-place updates of the population cannot shift the leaders
/// mid-iteration.
std::vector<std::vector<double>> leader_positions(const std::vector<AgentState>& population,
                                                  std::size_t count) {
    std::vector<std::size_t> order(population.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count),
                      order.end(), [&](std::size_t a, std::size_t b) {
                          if (population[a].fitness != population[b].fitness)
                              return population[a].fitness < population[b].fitness;
                          return a < b;
                      });
    std::vector<std::vector<double>> leaders;
    leaders.reserve(count);
    for (std::size_t i = 0; i < count; ++i) leaders.push_back(population[order[i]].position);
    return leaders;
}

/// Shared body of the grey-wolf update, parameterized on the leader set.
void wolf_update(std::vector<AgentState>& population, const ObjectiveFn& objective,
                 const SearchSpace& space, double a,
                 const std::vector<std::vector<double>>& leaders, Rng& rng,
                 std::size_t threads) {
    const std::size_t dim = space.dim();
    const double share = 1.0 / static_cast<double>(leaders.size());
    for (AgentState& wolf : population) {
        for (std::size_t k = 0; k < dim; ++k) {
            double acc = 0.0;
            for (const auto& leader : leaders) {
                const double r1 = rng.unit();
                const double r2 = rng.unit();
                const double step_scale = a * (2.0 * r1 - 1.0);
                const double prey_weight = 2.0 * r2;
                const double distance = std::abs(prey_weight * leader[k] - wolf.position[k]);
                acc += leader[k] - step_scale * distance;
            }
            wolf.position[k] = std::clamp(acc * share, space.lower[k], space.upper[k]);
        }
    }
    evaluate_all(population, objective, threads);
}

/// First strictly-best agent of the population.
const AgentState& best_agent(const std::vector<AgentState>& population) {
    return *std::min_element(population.begin(), population.end(),
                             [](const AgentState& a, const AgentState& b) {
                                 return a.fitness < b.fitness;
                             });
}

void validate_space(const SearchSpace& space) {
    if (space.lower.size() != space.upper.size())
        throw DimensionMismatchError("search-space bounds", space.lower.size(),
                                     space.upper.size());
    if (space.lower.empty()) throw EmptyInputError("search space");
    for (std::size_t k = 0; k < space.lower.size(); ++k) {
        if (!(space.lower[k] < space.upper[k]))
            throw InvalidValueError("bound", "lower bound must be below upper bound");
    }
}

}  // namespace

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::GWO: return "GWO";
        case Algorithm::MGWO: return "MGWO";
        case Algorithm::FDO: return "FDO";
    }
    return "unknown";
}

SearchSpace SearchSpace::symmetric(std::size_t dim, double bound) {
    return SearchSpace{std::vector<double>(dim, -bound), std::vector<double>(dim, bound)};
}

std::vector<AgentState> initialize(const ObjectiveFn& objective, const SearchSpace& space,
                                   std::size_t agents, Rng& rng, std::size_t threads) {
    validate_space(space);
    if (agents == 0) throw InvalidValueError("agents", "must be positive");
    const std::size_t dim = space.dim();
    std::vector<AgentState> population(agents);
    for (AgentState& agent : population) {
        agent.position.resize(dim);
        for (std::size_t k = 0; k < dim; ++k)
            agent.position[k] = rng.uniform(space.lower[k], space.upper[k]);
    }
    evaluate_all(population, objective, threads);
    return population;
}

double gwo_a(std::size_t t, std::size_t max_iter) {
    if (max_iter == 0) return 0.0;
    return 2.0 * (1.0 - static_cast<double>(t) / static_cast<double>(max_iter));
}

void gwo_iterate(std::vector<AgentState>& population, const ObjectiveFn& objective,
                 const SearchSpace& space, std::size_t t, std::size_t max_iter, Rng& rng,
                 std::size_t threads) {
    if (population.size() < 3)
        throw InvalidValueError("agents", "grey-wolf update needs at least 3 agents");
    wolf_update(population, objective, space, gwo_a(t, max_iter),
                leader_positions(population, 3), rng, threads);
}

void mgwo_iterate(std::vector<AgentState>& population, const ObjectiveFn& objective,
                  const SearchSpace& space, std::size_t t, std::size_t max_iter, Rng& rng,
                  std::size_t threads) {
    if (population.size() < 4)
        throw InvalidValueError("agents", "four-leader update needs at least 4 agents");
    auto leaders = population.size() == 4 ? leader_positions(population, 3)
                                          : leader_positions(population, 4);
    if (leaders.size() == 3) leaders.push_back(leaders.back());
    wolf_update(population, objective, space, gwo_a(t, max_iter), leaders, rng, threads);
}

double fitness_weight(double best_fitness, double current_fitness, int wf) {
    return std::abs(best_fitness / current_fitness) - static_cast<double>(wf);
}

std::vector<double> fdo_pace(std::span<const double> position,
                             std::span<const double> best_position, double fitness,
                             double best_fitness, int wf, std::span<const double> r) {
    if (position.size() != best_position.size())
        throw LengthMismatchError(position.size(), best_position.size());
    if (position.size() != r.size()) throw LengthMismatchError(position.size(), r.size());
    std::vector<double> pace(position.size());
    bool random_walk = fitness == 0.0;
    double fw = 0.0;
    if (!random_walk) {
        fw = fitness_weight(best_fitness, fitness, wf);
        random_walk = !(fw > 0.0 && fw < 1.0);
    }
    if (random_walk) {
        for (std::size_t k = 0; k < pace.size(); ++k) pace[k] = position[k] * r[k];
    } else {
        for (std::size_t k = 0; k < pace.size(); ++k) {
            const double toward = (position[k] - best_position[k]) * fw;
            pace[k] = r[k] < 0.0 ? -toward : toward;
        }
    }
    return pace;
}

void fdo_iterate(std::vector<AgentState>& population, const ObjectiveFn& objective,
                 const SearchSpace& space, AgentState& global_best, Rng& rng, int wf) {
    const std::size_t dim = space.dim();
    std::vector<double> r(dim);
    std::vector<double> candidate(dim);
    for (AgentState& agent : population) {
        for (std::size_t k = 0; k < dim; ++k) r[k] = rng.uniform(-1.0, 1.0);
        const std::vector<double> pace = fdo_pace(agent.position, global_best.position,
                                                  agent.fitness, global_best.fitness, wf, r);
        for (std::size_t k = 0; k < dim; ++k)
            candidate[k] =
                std::clamp(agent.position[k] + pace[k], space.lower[k], space.upper[k]);
        const double candidate_fitness = objective(candidate);
        if (candidate_fitness < agent.fitness) {
            agent.position = candidate;
            agent.fitness = candidate_fitness;
            if (candidate_fitness < global_best.fitness) {
                global_best.position = agent.position;
                global_best.fitness = candidate_fitness;
            }
        }
    }
}

OptRun optimize(const ObjectiveFn& objective, const SearchSpace& space,
                const OptimizerRunConfig& config) {
    validate_space(space);
    if (config.agents == 0) throw InvalidValueError("agents", "must be positive");
    if (config.algorithm != Algorithm::FDO && config.agents < 4)
        throw InvalidValueError("agents", "grey-wolf variants need at least 4 agents");
    if (config.wf != 0 && config.wf != 1)
        throw InvalidValueError("wf", "weight factor must be 0 or 1");

    std::atomic<std::size_t> evaluations{0};
    ObjectiveFn counted = [&objective, &evaluations](std::span<const double> x) {
        const double value = objective(x);
        if (!std::isfinite(value)) throw NonFiniteFitnessError(value);
        evaluations.fetch_add(1, std::memory_order_relaxed);
        return value;
    };

    const auto started = std::chrono::steady_clock::now();
    Rng rng(config.seed);
    std::vector<AgentState> population =
        initialize(counted, space, config.agents, rng, config.threads);
    AgentState best = best_agent(population);

    OptRun run;
    run.history.reserve(config.max_iter + 1);
    run.history.emplace_back(0, best.fitness);
    for (std::size_t t = 1; t <= config.max_iter; ++t) {
        switch (config.algorithm) {
            case Algorithm::GWO:
                gwo_iterate(population, counted, space, t, config.max_iter, rng,
                            config.threads);
                break;
            case Algorithm::MGWO:
                mgwo_iterate(population, counted, space, t, config.max_iter, rng,
                             config.threads);
                break;
            case Algorithm::FDO:
                fdo_iterate(population, counted, space, best, rng, config.wf);
                break;
        }
        if (config.algorithm != Algorithm::FDO) {
            const AgentState& challenger = best_agent(population);
            if (challenger.fitness < best.fitness) best = challenger;
        }
        run.history.emplace_back(t, best.fitness);
    }
    run.best_position = std::move(best.position);
    run.best_fitness = best.fitness;
    run.evaluations = evaluations.load();
    run.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return run;
}

void write_history_csv(const std::string& path, const OptRun& run) {
    std::ofstream out(path);
    if (!out) throw IoError(path, "cannot open for writing");
    out << "iteration,best_fitness\n";
    char buf[64];
    for (const auto& [iteration, fitness] : run.history) {
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), fitness);
        out << iteration << ',';
        out.write(buf, ptr - buf);
        out << '\n';
    }
    if (!out) throw IoError(path, "write failed");
}

}  // namespace platenet
