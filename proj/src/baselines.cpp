#include "spider/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spider/sso.hpp"

namespace spider::baselines {
namespace {

constexpr std::uint64_t kInitStream = 0;
constexpr std::uint64_t kOperatorStream = 1;
constexpr std::uint64_t kNoiseStream = 2;

std::vector<std::vector<double>> uniform_positions(const ObjectiveSpec& spec,
                                                   std::size_t count, RandomStream& rng) {
    const auto low = spec.bounds.low();
    const auto high = spec.bounds.high();
    std::vector<std::vector<double>> positions(count, std::vector<double>(spec.dimension));
    for (auto& x : positions)
        for (std::size_t j = 0; j < spec.dimension; ++j)
            x[j] = low[j] + rng.uniform() * (high[j] - low[j]);
    return positions;
}

}  // namespace

double inertia_at(const PsoParams& params, std::size_t iteration) {
    if (params.max_iterations <= 1) return params.inertia_start;
    const double t = static_cast<double>(iteration) /
                     static_cast<double>(params.max_iterations - 1);
    return params.inertia_start + (params.inertia_end - params.inertia_start) * t;
}

double pso_velocity(double v, double x, double personal_best, double global_best,
                    double inertia, double c1, double c2, double r1, double r2) {
    return inertia * v + c1 * r1 * (personal_best - x) + c2 * r2 * (global_best - x);
}

RunRecord pso_run(const ObjectiveSpec& spec, const PsoParams& params,
                  const PsoObserver& observer) {
    if (params.population_size < 1)
        throw std::invalid_argument("population_size must be positive");
    if (!(params.c1 > 0.0 && params.c2 > 0.0))
        throw std::invalid_argument("acceleration coefficients must be positive");

    RandomStream root(params.seed);
    RandomStream init_rng = root.substream(kInitStream);
    RandomStream op_rng = root.substream(kOperatorStream);
    RandomStream noise_rng = root.substream(kNoiseStream);

    const std::size_t n = spec.dimension;
    const auto low = spec.bounds.low();
    const auto high = spec.bounds.high();

    auto positions = uniform_positions(spec, params.population_size, init_rng);
    std::vector<std::vector<double>> velocities(params.population_size,
                                                std::vector<double>(n, 0.0));
    auto personal_best = positions;
    std::vector<double> personal_best_fitness(params.population_size);

    RunRecord record;
    for (std::size_t p = 0; p < params.population_size; ++p) {
        personal_best_fitness[p] = spec.evaluate(positions[p], noise_rng);
        ++record.evaluations;
    }

    std::size_t g = static_cast<std::size_t>(
        std::min_element(personal_best_fitness.begin(), personal_best_fitness.end()) -
        personal_best_fitness.begin());
    std::vector<double> global_best = personal_best[g];
    double global_best_fitness = personal_best_fitness[g];

    record.best_so_far_trace.reserve(params.max_iterations);

    for (std::size_t iter = 0; iter < params.max_iterations; ++iter) {
        const double w = inertia_at(params, iter);
        for (std::size_t p = 0; p < params.population_size; ++p) {
            for (std::size_t j = 0; j < n; ++j) {
                const double r1 = op_rng.uniform();
                const double r2 = op_rng.uniform();
                double v = pso_velocity(velocities[p][j], positions[p][j],
                                        personal_best[p][j], global_best[j], w, params.c1,
                                        params.c2, r1, r2);
                // velocity capped at the axis width
                const double vmax = high[j] - low[j];
                v = std::clamp(v, -vmax, vmax);
                velocities[p][j] = v;
                positions[p][j] = std::clamp(positions[p][j] + v, low[j], high[j]);
            }
            const double f = spec.evaluate(positions[p], noise_rng);
            ++record.evaluations;
            if (f < personal_best_fitness[p]) {
                personal_best_fitness[p] = f;
                personal_best[p] = positions[p];
                if (f < global_best_fitness) {
                    global_best_fitness = f;
                    global_best = positions[p];
                }
            }
        }
        record.best_so_far_trace.push_back(global_best_fitness);
        if (observer)
            observer(PsoIterationView{iter + 1, positions, personal_best_fitness,
                                      global_best_fitness});
    }

    record.best_position = std::move(global_best);
    record.best_fitness = global_best_fitness;
    return record;
}

std::vector<double> abc_selection_probabilities(std::span<const double> fitnesses) {
    if (fitnesses.empty())
        throw std::invalid_argument("abc_selection_probabilities: empty input");
    std::vector<double> fit(fitnesses.size());
    for (std::size_t i = 0; i < fit.size(); ++i)
        fit[i] = fitnesses[i] >= 0.0 ? 1.0 / (1.0 + fitnesses[i]) : 1.0 + std::abs(fitnesses[i]);
    double total = 0.0;
    for (double v : fit) total += v;
    for (double& v : fit) v /= total;
    return fit;
}

RunRecord abc_run(const ObjectiveSpec& spec, const AbcParams& params,
                  const AbcObserver& observer) {
    if (params.colony_size < 4)
        throw std::invalid_argument("colony_size must be at least 4");
    if (params.limit < 1) throw std::invalid_argument("limit must be at least 1");

    RandomStream root(params.seed);
    RandomStream init_rng = root.substream(kInitStream);
    RandomStream op_rng = root.substream(kOperatorStream);
    RandomStream noise_rng = root.substream(kNoiseStream);

    const std::size_t sources = params.colony_size / 2;
    const std::size_t n = spec.dimension;
    const auto low = spec.bounds.low();
    const auto high = spec.bounds.high();

    auto food = uniform_positions(spec, sources, init_rng);
    std::vector<double> fitness(sources);
    std::vector<std::size_t> trials(sources, 0);

    RunRecord record;
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_position;
    auto note_best = [&](double f, const std::vector<double>& x) {
        if (f < best) {
            best = f;
            best_position = x;
        }
    };

    for (std::size_t s = 0; s < sources; ++s) {
        fitness[s] = spec.evaluate(food[s], noise_rng);
        ++record.evaluations;
        note_best(fitness[s], food[s]);
    }

    // one-dimension perturbation toward a random peer with greedy selection
    auto try_improve = [&](std::size_t s) {
        const std::size_t j = op_rng.uniform_index(n);
        std::size_t k = op_rng.uniform_index(sources - 1);
        if (k >= s) ++k;  // peer distinct from s
        const double phi = op_rng.uniform(-1.0, 1.0);
        std::vector<double> candidate = food[s];
        candidate[j] = std::clamp(food[s][j] + phi * (food[s][j] - food[k][j]), low[j], high[j]);
        const double f = spec.evaluate(candidate, noise_rng);
        ++record.evaluations;
        note_best(f, candidate);
        if (f < fitness[s]) {
            food[s] = std::move(candidate);
            fitness[s] = f;
            trials[s] = 0;
        } else {
            ++trials[s];
        }
    };

    record.best_so_far_trace.reserve(params.max_iterations);

    for (std::size_t iter = 1; iter <= params.max_iterations; ++iter) {
        for (std::size_t s = 0; s < sources; ++s) try_improve(s);

        const auto probs = abc_selection_probabilities(fitness);
        for (std::size_t k = 0; k < sources; ++k)
            try_improve(sso::roulette_pick(probs, op_rng.uniform()));

        // scouts: abandon exhausted sources
        for (std::size_t s = 0; s < sources; ++s) {
            if (trials[s] <= params.limit) continue;
            for (std::size_t j = 0; j < n; ++j)
                food[s][j] = low[j] + op_rng.uniform() * (high[j] - low[j]);
            fitness[s] = spec.evaluate(food[s], noise_rng);
            ++record.evaluations;
            note_best(fitness[s], food[s]);
            trials[s] = 0;
        }

        record.best_so_far_trace.push_back(best);
        if (observer) observer(AbcIterationView{iter, food, trials, best});
    }

    record.best_position = std::move(best_position);
    record.best_fitness = best;
    return record;
}

}  // namespace spider::baselines
