#include "spider/sso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spider::sso {
namespace {

// substream tags of the per-run root stream
constexpr std::uint64_t kInitStream = 0;      // gender split + initial positions
constexpr std::uint64_t kOperatorStream = 1;  // movement and mating draws
constexpr std::uint64_t kNoiseStream = 2;     // stochastic objectives

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        sum += d * d;
    }
    return sum;
}

// Distance on the communal-web scale: every axis rescaled to unit width.
// Raw distances on wide domains reach the hundreds, where exp(-d^2)
// underflows to zero and all vibration signals vanish; the web scale keeps
// them responsive regardless of domain width.
double web_distance(std::span<const double> a, std::span<const double> b, const Bounds& box) {
    double sum = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = (a[j] - b[j]) / box.width(j);
        sum += d * d;
    }
    return std::sqrt(sum);
}

}  // namespace

std::pair<std::size_t, std::size_t> split_counts(std::size_t n_total, double u) {
    if (n_total < 4)
        throw std::invalid_argument("population must hold at least 4 spiders");
    const auto n_female = static_cast<std::size_t>(
        std::floor((0.9 - 0.25 * u) * static_cast<double>(n_total)));
    return {n_female, n_total - n_female};
}

std::pair<std::size_t, std::size_t> split_population(std::size_t n_total, RandomStream& rng) {
    return split_counts(n_total, rng.uniform());
}

Population initialize_population(const ObjectiveSpec& spec, std::size_t n_female,
                                 std::size_t n_male, RandomStream& rng) {
    if (n_female == 0 || n_male == 0)
        throw std::invalid_argument("both genders must be represented");
    if (spec.dimension != spec.bounds.dimension())
        throw std::invalid_argument("objective dimension does not match its bounds");

    Population pop{{}, n_female, n_male, spec.bounds};
    pop.spiders.reserve(n_female + n_male);
    const auto low = spec.bounds.low();
    const auto high = spec.bounds.high();
    for (std::size_t i = 0; i < n_female + n_male; ++i) {
        Spider s;
        s.gender = i < n_female ? Gender::Female : Gender::Male;
        s.position.resize(spec.dimension);
        for (std::size_t j = 0; j < spec.dimension; ++j)
            s.position[j] = low[j] + rng.uniform() * (high[j] - low[j]);
        pop.spiders.push_back(std::move(s));
    }
    return pop;
}

std::vector<double> assign_weights(std::span<const double> fitnesses) {
    if (fitnesses.empty())
        throw std::invalid_argument("assign_weights: empty fitness vector");
    const auto [min_it, max_it] = std::minmax_element(fitnesses.begin(), fitnesses.end());
    const double best = *min_it;
    const double worst = *max_it;
    std::vector<double> weights(fitnesses.size(), 1.0);
    if (worst == best) return weights;  // flat colony: keep full vibration strength
    for (std::size_t i = 0; i < weights.size(); ++i)
        weights[i] = (worst - fitnesses[i]) / (worst - best);
    return weights;
}

double vibration(double source_weight, double distance) {
    return source_weight * std::exp(-(distance * distance));
}

std::size_t find_vibc_source(std::size_t i, const Population& pop,
                             std::span<const double> weights) {
    const auto& self = pop.spiders[i].position;
    std::size_t best_j = i;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < pop.size(); ++j) {
        if (j == i || !(weights[j] > weights[i])) continue;
        const double d2 = squared_distance(self, pop.spiders[j].position);
        if (d2 < best_d2) {
            best_d2 = d2;
            best_j = j;
        }
    }
    return best_j;
}

std::size_t find_vibb_source(std::span<const double> weights) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < weights.size(); ++j)
        if (weights[j] > weights[best]) best = j;
    return best;
}

std::size_t find_vibf_source(std::size_t i, const Population& pop) {
    if (pop.n_female == 0) throw std::logic_error("colony has no females");
    const auto& self = pop.spiders[i].position;
    std::size_t best_j = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < pop.n_female; ++j) {
        const double d2 = squared_distance(self, pop.spiders[j].position);
        if (d2 < best_d2) {
            best_d2 = d2;
            best_j = j;
        }
    }
    return best_j;
}

VibrationContext resolve_vibrations(std::size_t i, const Population& pop,
                                    std::span<const double> weights) {
    const auto& self = pop.spiders[i].position;
    VibrationContext out;
    out.vibc_source = find_vibc_source(i, pop, weights);
    out.vibb_source = find_vibb_source(weights);
    out.vibc = vibration(weights[out.vibc_source],
                         web_distance(self, pop.spiders[out.vibc_source].position, pop.bounds));
    out.vibb = vibration(weights[out.vibb_source],
                         web_distance(self, pop.spiders[out.vibb_source].position, pop.bounds));
    if (pop.is_male(i)) {
        out.vibf_source = find_vibf_source(i, pop);
        out.vibf =
            vibration(weights[out.vibf_source],
                      web_distance(self, pop.spiders[out.vibf_source].position, pop.bounds));
    }
    return out;
}

double median_male_weight(const Population& pop, std::span<const double> weights) {
    if (pop.n_male == 0) throw std::logic_error("colony has no males");
    std::vector<double> male(weights.begin() + pop.n_female, weights.end());
    std::sort(male.begin(), male.end(), std::greater<>());
    return male[pop.n_male / 2];  // 1-indexed position ceil((n_male + 1) / 2)
}

MaleClassification classify_males(const Population& pop, std::span<const double> weights) {
    MaleClassification out;
    out.median_weight = median_male_weight(pop, weights);
    for (std::size_t j = pop.n_female; j < pop.size(); ++j)
        (weights[j] > out.median_weight ? out.dominant : out.non_dominant).push_back(j);
    if (out.dominant.empty()) {
        // nobody clears the median (e.g. all male weights equal): the
        // first male is promoted
        out.dominant.push_back(out.non_dominant.front());
        out.non_dominant.erase(out.non_dominant.begin());
    }
    return out;
}

std::vector<double> female_step(std::span<const double> position,
                                std::span<const double> vibc_source, double vibc,
                                std::span<const double> vibb_source, double vibb,
                                bool attraction, double alpha, double beta, double delta,
                                std::span<const double> centered_noise) {
    const double sign = attraction ? 1.0 : -1.0;
    std::vector<double> next(position.size());
    for (std::size_t j = 0; j < position.size(); ++j) {
        next[j] = position[j] + sign * alpha * vibc * (vibc_source[j] - position[j]) +
                  sign * beta * vibb * (vibb_source[j] - position[j]) +
                  delta * centered_noise[j];
    }
    return next;
}

FemaleMove female_move(std::size_t i, const Population& pop, std::span<const double> weights,
                       double pf, RandomStream& rng, std::span<const double> best_anchor) {
    const auto& self = pop.spiders[i];
    const std::size_t c = find_vibc_source(i, pop, weights);
    std::span<const double> b_position = best_anchor;
    double b_weight = 1.0;
    if (b_position.empty()) {
        const std::size_t b = find_vibb_source(weights);
        b_position = pop.spiders[b].position;
        b_weight = weights[b];
    }
    const double vibc =
        vibration(weights[c], web_distance(self.position, pop.spiders[c].position, pop.bounds));
    const double vibb =
        vibration(b_weight, web_distance(self.position, b_position, pop.bounds));

    // draw order: branch selector, three scalar coefficients, then one
    // centered perturbation per dimension
    const bool attraction = rng.uniform() < pf;
    const double alpha = rng.uniform();
    const double beta = rng.uniform();
    const double delta = rng.uniform();
    std::vector<double> noise(self.position.size());
    for (auto& v : noise) v = rng.uniform() - 0.5;

    auto next = female_step(self.position, pop.spiders[c].position, vibc, b_position, vibb,
                            attraction, alpha, beta, delta, noise);
    return {clamp_to_bounds(next, pop.bounds), attraction};
}

std::vector<double> weighted_male_mean(const Population& pop, std::span<const double> weights) {
    const std::size_t n = pop.bounds.dimension();
    std::vector<double> mean(n, 0.0);
    double total = 0.0;
    for (std::size_t j = pop.n_female; j < pop.size(); ++j) total += weights[j];
    if (total > 0.0) {
        for (std::size_t j = pop.n_female; j < pop.size(); ++j)
            for (std::size_t d = 0; d < n; ++d)
                mean[d] += pop.spiders[j].position[d] * weights[j];
        for (auto& v : mean) v /= total;
    } else {
        // all male weights zero: the weighted mean is undefined
        for (std::size_t j = pop.n_female; j < pop.size(); ++j)
            for (std::size_t d = 0; d < n; ++d) mean[d] += pop.spiders[j].position[d];
        for (auto& v : mean) v /= static_cast<double>(pop.n_male);
    }
    return mean;
}

std::vector<double> male_step_dominant(std::span<const double> position,
                                       std::span<const double> vibf_source, double vibf,
                                       double alpha, double delta,
                                       std::span<const double> centered_noise) {
    std::vector<double> next(position.size());
    for (std::size_t j = 0; j < position.size(); ++j)
        next[j] = position[j] + alpha * vibf * (vibf_source[j] - position[j]) +
                  delta * centered_noise[j];
    return next;
}

std::vector<double> male_step_nondominant(std::span<const double> position,
                                          std::span<const double> male_mean, double alpha) {
    std::vector<double> next(position.size());
    for (std::size_t j = 0; j < position.size(); ++j)
        next[j] = position[j] + alpha * (male_mean[j] - position[j]);
    return next;
}

std::vector<double> male_move(std::size_t i, const Population& pop,
                              std::span<const double> weights,
                              const MaleClassification& males, RandomStream& rng,
                              std::span<const double> male_mean) {
    const auto& self = pop.spiders[i];
    const bool dominant =
        std::binary_search(males.dominant.begin(), males.dominant.end(), i);
    std::vector<double> next;
    if (dominant) {
        const std::size_t f = find_vibf_source(i, pop);
        const double vibf =
            vibration(weights[f], web_distance(self.position, pop.spiders[f].position, pop.bounds));
        const double alpha = rng.uniform();
        const double delta = rng.uniform();
        std::vector<double> noise(self.position.size());
        for (auto& v : noise) v = rng.uniform() - 0.5;
        next = male_step_dominant(self.position, pop.spiders[f].position, vibf, alpha, delta,
                                  noise);
    } else {
        const double alpha = rng.uniform();
        if (male_mean.empty()) {
            next = male_step_nondominant(self.position, weighted_male_mean(pop, weights),
                                         alpha);
        } else {
            next = male_step_nondominant(self.position, male_mean, alpha);
        }
    }
    return clamp_to_bounds(next, pop.bounds);
}

double mating_radius(const Bounds& bounds) {
    double sum = 0.0;
    for (std::size_t j = 0; j < bounds.dimension(); ++j) sum += bounds.width(j);
    return sum / (2.0 * static_cast<double>(bounds.dimension()));
}

std::vector<double> roulette_probabilities(std::span<const double> member_weights) {
    if (member_weights.empty())
        throw std::invalid_argument("roulette_probabilities: empty weight vector");
    double total = 0.0;
    for (double w : member_weights) total += w;
    std::vector<double> probs(member_weights.size());
    if (total <= 0.0) {
        std::fill(probs.begin(), probs.end(), 1.0 / static_cast<double>(probs.size()));
        return probs;
    }
    for (std::size_t i = 0; i < probs.size(); ++i) probs[i] = member_weights[i] / total;
    return probs;
}

std::size_t roulette_pick(std::span<const double> probabilities, double u) {
    double cumulative = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        cumulative += probabilities[i];
        if (u < cumulative) return i;
    }
    return probabilities.size() - 1;  // rounding guard for u near 1
}

std::optional<std::vector<double>> mate(std::size_t male_index, const Population& pop,
                                        std::span<const double> weights, double radius,
                                        const std::function<double()>& draw) {
    const auto& male = pop.spiders[male_index];

    std::vector<std::size_t> group;  // females in range, then the male itself
    for (std::size_t j = 0; j < pop.n_female; ++j)
        if (euclidean_distance(male.position, pop.spiders[j].position) <= radius)
            group.push_back(j);
    if (group.empty()) return std::nullopt;  // no female in range: mating canceled
    group.push_back(male_index);

    std::vector<double> member_weights(group.size());
    for (std::size_t k = 0; k < group.size(); ++k) member_weights[k] = weights[group[k]];
    const auto probs = roulette_probabilities(member_weights);

    // each coordinate is inherited independently from a drawn parent
    std::vector<double> brood(male.position.size());
    for (std::size_t d = 0; d < brood.size(); ++d) {
        const std::size_t pick = roulette_pick(probs, draw());
        brood[d] = pop.spiders[group[pick]].position[d];
    }
    return clamp_to_bounds(brood, pop.bounds);
}

std::optional<std::vector<double>> mate(std::size_t male_index, const Population& pop,
                                        std::span<const double> weights, double radius,
                                        RandomStream& rng) {
    return mate(male_index, pop, weights, radius, [&rng] { return rng.uniform(); });
}

std::optional<std::size_t> survive_replace(Population& pop, std::vector<double>& weights,
                                           std::span<const double> brood_position,
                                           double brood_fitness, double brood_weight) {
    std::size_t worst = 0;
    for (std::size_t j = 1; j < weights.size(); ++j)
        if (weights[j] < weights[worst]) worst = j;
    if (!(brood_weight > weights[worst])) return std::nullopt;

    Spider& slot = pop.spiders[worst];  // brood assumes this slot's gender and index
    slot.position.assign(brood_position.begin(), brood_position.end());
    slot.fitness = brood_fitness;
    slot.weight = brood_weight;
    weights[worst] = brood_weight;
    return worst;
}

RunRecord run(const ObjectiveSpec& spec, const SsoParams& params,
              const IterationObserver& observer) {
    if (params.population_size < 4)
        throw std::invalid_argument("population_size must be at least 4");
    if (!(params.pf >= 0.0 && params.pf <= 1.0))
        throw std::invalid_argument("pf must lie in [0,1]");
    if (spec.dimension != spec.bounds.dimension())
        throw std::invalid_argument("objective dimension does not match its bounds");

    RandomStream root(params.seed);
    RandomStream init_rng = root.substream(kInitStream);
    RandomStream op_rng = root.substream(kOperatorStream);
    RandomStream noise_rng = root.substream(kNoiseStream);

    const auto [n_female, n_male] = split_population(params.population_size, init_rng);
    Population pop = initialize_population(spec, n_female, n_male, init_rng);
    const double radius = mating_radius(pop.bounds);

    RunRecord record;
    std::vector<double> fitnesses(pop.size());

    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_position;
    auto note_best = [&](double f, const std::vector<double>& x) {
        if (f < best) {
            best = f;
            best_position = x;
        }
    };

    for (std::size_t i = 0; i < pop.size(); ++i) {
        fitnesses[i] = spec.evaluate(pop.spiders[i].position, noise_rng);
        pop.spiders[i].fitness = fitnesses[i];
        ++record.evaluations;
        note_best(fitnesses[i], pop.spiders[i].position);
    }

    record.best_so_far_trace.reserve(params.max_iterations);

    for (std::size_t iter = 1; iter <= params.max_iterations; ++iter) {
        // quality weights for this iteration; the movement phase and the
        // dominance split both read this start-of-iteration state
        const std::vector<double> weights = assign_weights(fitnesses);
        for (std::size_t i = 0; i < pop.size(); ++i) pop.spiders[i].weight = weights[i];
        const MaleClassification males = classify_males(pop, weights);

        // all moves are computed against the unmodified snapshot, females
        // first, then written back at once; the female anchor is the best
        // position seen so far, not the transient population argmax
        const std::vector<double> male_mean = weighted_male_mean(pop, weights);
        std::vector<std::vector<double>> next(pop.size());
        for (std::size_t i = 0; i < pop.n_female; ++i)
            next[i] = female_move(i, pop, weights, params.pf, op_rng, best_position).position;
        for (std::size_t i = pop.n_female; i < pop.size(); ++i)
            next[i] = male_move(i, pop, weights, males, op_rng, male_mean);
        for (std::size_t i = 0; i < pop.size(); ++i)
            pop.spiders[i].position = std::move(next[i]);

        for (std::size_t i = 0; i < pop.size(); ++i) {
            fitnesses[i] = spec.evaluate(pop.spiders[i].position, noise_rng);
            pop.spiders[i].fitness = fitnesses[i];
            ++record.evaluations;
            note_best(fitnesses[i], pop.spiders[i].position);
        }

        // mating: broods are scored against the quality scale frozen at
        // its pre-mating state, replacements apply immediately
        const auto [pre_best_it, pre_worst_it] =
            std::minmax_element(fitnesses.begin(), fitnesses.end());
        const double pre_best = *pre_best_it;
        const double pre_worst = *pre_worst_it;
        auto brood_weight_of = [pre_best, pre_worst](double f) {
            if (pre_worst > pre_best) return (pre_worst - f) / (pre_worst - pre_best);
            return f < pre_best ? 2.0 : (f == pre_best ? 1.0 : 0.0);
        };

        std::vector<double> mating_weights = assign_weights(fitnesses);
        for (std::size_t i = 0; i < pop.size(); ++i)
            pop.spiders[i].weight = mating_weights[i];

        for (std::size_t g : males.dominant) {
            const auto brood = mate(g, pop, mating_weights, radius, op_rng);
            if (!brood) continue;
            const double brood_fitness = spec.evaluate(*brood, noise_rng);
            ++record.evaluations;
            note_best(brood_fitness, *brood);
            const auto replaced = survive_replace(pop, mating_weights, *brood, brood_fitness,
                                                  brood_weight_of(brood_fitness));
            if (replaced) fitnesses[*replaced] = brood_fitness;
        }

        record.best_so_far_trace.push_back(best);

        if (observer) {
            const double worst_after =
                *std::max_element(fitnesses.begin(), fitnesses.end());
            observer(IterationSnapshot{iter, pop, weights, pre_worst, worst_after, best});
        }
    }

    record.best_position = std::move(best_position);
    record.best_fitness = best;
    return record;
}

}  // namespace spider::sso
