#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "spider/core.hpp"

namespace spider::baselines {

/// Global-best PSO with a linearly decreasing inertia weight.
struct PsoParams {
    std::size_t population_size = 50;
    std::size_t max_iterations = 1000;
    double c1 = 2.0;
    double c2 = 2.0;
    double inertia_start = 0.9;
    double inertia_end = 0.2;
    std::uint64_t seed = 0;
};

/// Canonical artificial bee colony: half the colony are food sources,
/// employed and onlooker phases perturb one dimension toward a random
/// peer, scouts re-initialize sources whose trial counter exceeds limit.
struct AbcParams {
    std::size_t colony_size = 50;
    std::size_t max_iterations = 1000;
    std::size_t limit = 100;
    std::uint64_t seed = 0;
};

/// Inertia at a 0-based iteration: linear from inertia_start at the first
/// iteration to inertia_end at the last.
double inertia_at(const PsoParams& params, std::size_t iteration);

/// One velocity component update: w*v + c1*r1*(pbest-x) + c2*r2*(gbest-x).
double pso_velocity(double v, double x, double personal_best, double global_best,
                    double inertia, double c1, double c2, double r1, double r2);

/// Onlooker selection probabilities from the fitness transform
/// 1/(1+f) for f >= 0, 1+|f| otherwise, normalized to sum 1.
std::vector<double> abc_selection_probabilities(std::span<const double> fitnesses);

struct PsoIterationView {
    std::size_t iteration;  // 1-based
    const std::vector<std::vector<double>>& positions;
    std::span<const double> personal_best_fitness;
    double best_so_far;
};
using PsoObserver = std::function<void(const PsoIterationView&)>;

struct AbcIterationView {
    std::size_t iteration;  // 1-based
    const std::vector<std::vector<double>>& sources;
    std::span<const std::size_t> trials;
    double best_so_far;
};
using AbcObserver = std::function<void(const AbcIterationView&)>;

RunRecord pso_run(const ObjectiveSpec& spec, const PsoParams& params,
                  const PsoObserver& observer = {});

RunRecord abc_run(const ObjectiveSpec& spec, const AbcParams& params,
                  const AbcObserver& observer = {});

}  // namespace spider::baselines
