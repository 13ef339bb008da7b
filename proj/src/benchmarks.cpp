#include "platenet/benchmarks.hpp"

#include <cmath>
#include <numbers>

namespace platenet {

double sphere(std::span<const double> x) {
    double sum = 0.0;
    for (double v : x) sum += v * v;
    return sum;
}

double rosenbrock(std::span<const double> x) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = x[i + 1] - x[i] * x[i];
        const double b = 1.0 - x[i];
        sum += 100.0 * a * a + b * b;
    }
    return sum;
}

double rastrigin(std::span<const double> x) {
    double sum = 10.0 * static_cast<double>(x.size());
    for (double v : x) sum += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
    return sum;
}

std::vector<BenchmarkFunction> benchmark_suite(std::size_t dimension) {
    std::vector<BenchmarkFunction> suite;
    suite.push_back({"sphere", dimension, sphere, 0.0, std::vector<double>(dimension, 0.0),
                     -10.0, 10.0});
    suite.push_back({"rosenbrock", dimension, rosenbrock, 0.0,
                     std::vector<double>(dimension, 1.0), -5.0, 10.0});
    suite.push_back({"rastrigin", dimension, rastrigin, 0.0,
                     std::vector<double>(dimension, 0.0), -5.12, 5.12});
    return suite;
}

}  // namespace platenet
