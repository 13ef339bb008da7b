#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace platenet {

/// Analytic test function with a documented optimum, used to validate the
/// optimizers independently of any classifier.
struct BenchmarkFunction {
    std::string name;
    std::size_t dimension = 0;
    std::function<double(std::span<const double>)> evaluate;
    double known_optimum = 0.0;
    std::vector<double> optimum_position;
    double lower = 0.0;  ///< conventional domain bound, every coordinate
    double upper = 0.0;
};

double sphere(std::span<const double> x);
double rosenbrock(std::span<const double> x);
double rastrigin(std::span<const double> x);

/// Sphere, Rosenbrock, and Rastrigin at the requested dimensionality.
std::vector<BenchmarkFunction> benchmark_suite(std::size_t dimension = 10);

}  // namespace platenet
