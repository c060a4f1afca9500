#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "spider/core.hpp"

namespace spider::sso {

struct SsoParams {
    std::size_t population_size = 50;
    std::size_t max_iterations = 1000;
    /// Threshold selecting attraction (draw < pf) over repulsion in the
    /// female operator.
    double pf = 0.7;
    std::uint64_t seed = 0;
};

/// Gender split with an explicit draw u in [0,1):
/// n_female = floor((0.9 - 0.25*u) * n_total), n_male the complement.
/// Throws std::invalid_argument when n_total < 4.
std::pair<std::size_t, std::size_t> split_counts(std::size_t n_total, double u);
std::pair<std::size_t, std::size_t> split_population(std::size_t n_total, RandomStream& rng);

/// Uniform positions inside the search box, females first.
Population initialize_population(const ObjectiveSpec& spec, std::size_t n_female,
                                 std::size_t n_male, RandomStream& rng);

/// Min-max quality weights: best fitness -> 1, worst -> 0. When every
/// fitness is equal all weights are 1.
std::vector<double> assign_weights(std::span<const double> fitnesses);

/// Perceived vibration intensity: w * exp(-d^2).
double vibration(double source_weight, double distance);

/// Nearest member with a strictly higher weight than i; ties go to the
/// lowest index. Returns i itself when no such member exists.
std::size_t find_vibc_source(std::size_t i, const Population& pop,
                             std::span<const double> weights);

/// Index of the highest weight; ties go to the lowest index.
std::size_t find_vibb_source(std::span<const double> weights);

/// Nearest female to member i; ties go to the lowest index.
std::size_t find_vibf_source(std::size_t i, const Population& pop);

/// Resolved vibration sources and intensities for one spider. Each
/// intensity is bounded by its source weight. vibf fields are meaningful
/// for males only (females keep the defaults).
struct VibrationContext {
    std::size_t vibc_source = 0;
    std::size_t vibb_source = 0;
    std::size_t vibf_source = 0;
    double vibc = 0.0;
    double vibb = 0.0;
    double vibf = 0.0;
};

/// Resolves all vibration signals perceived by spider i on the web scale.
VibrationContext resolve_vibrations(std::size_t i, const Population& pop,
                                    std::span<const double> weights);

/// Lower median of the male weights (element ceil((n_male+1)/2) of the
/// decreasing sort).
double median_male_weight(const Population& pop, std::span<const double> weights);

struct MaleClassification {
    double median_weight = 0.0;
    std::vector<std::size_t> dominant;      // population indices, ascending
    std::vector<std::size_t> non_dominant;  // population indices, ascending
};

/// Males strictly above the median weight are dominant. When nobody
/// clears the median the first male is promoted so mating stays possible.
MaleClassification classify_males(const Population& pop, std::span<const double> weights);

/// One female update with explicit coefficients. `centered_noise` holds
/// the per-dimension (rand - 1/2) draws. The result is not clamped.
std::vector<double> female_step(std::span<const double> position,
                                std::span<const double> vibc_source, double vibc,
                                std::span<const double> vibb_source, double vibb,
                                bool attraction, double alpha, double beta, double delta,
                                std::span<const double> centered_noise);

struct FemaleMove {
    std::vector<double> position;
    bool attraction = false;
};

/// Resolves both vibration sources, draws the branch selector, the three
/// scalar coefficients and the per-dimension perturbation, then clamps.
/// Vibration intensities are measured on the web scale (axes of the
/// search box rescaled to unit width) so they stay responsive on wide
/// domains. A non-empty `best_anchor` replaces the population argmax as
/// the strongest-vibration source (the engine passes the best position
/// seen so far, at full weight).
FemaleMove female_move(std::size_t i, const Population& pop, std::span<const double> weights,
                       double pf, RandomStream& rng, std::span<const double> best_anchor = {});

/// Weight-proportional mean of the male positions; plain average when all
/// male weights are zero.
std::vector<double> weighted_male_mean(const Population& pop, std::span<const double> weights);

std::vector<double> male_step_dominant(std::span<const double> position,
                                       std::span<const double> vibf_source, double vibf,
                                       double alpha, double delta,
                                       std::span<const double> centered_noise);

std::vector<double> male_step_nondominant(std::span<const double> position,
                                          std::span<const double> male_mean, double alpha);

/// Dominant males chase the nearest female (vibration intensity on the
/// web scale, as in female_move); non-dominant males contract toward the
/// weighted male mean. Clamped. A non-empty `male_mean` supplies a
/// precomputed mean (the engine fixes it at the male phase entry).
std::vector<double> male_move(std::size_t i, const Population& pop,
                              std::span<const double> weights,
                              const MaleClassification& males, RandomStream& rng,
                              std::span<const double> male_mean = {});

/// Half the mean axis width: sum of widths over 2n.
double mating_radius(const Bounds& bounds);

/// Weight-proportional selection probabilities; an all-zero input falls
/// back to the uniform distribution.
std::vector<double> roulette_probabilities(std::span<const double> member_weights);

/// Index selected by a cumulative walk over `probabilities` at u in [0,1).
std::size_t roulette_pick(std::span<const double> probabilities, double u);

/// Brood position for dominant male `male_index`: females within `radius`
/// join the male to form the mating group, and every coordinate is copied
/// from a group member drawn independently by roulette. Returns nothing
/// when no female is in range. `draw` supplies the uniforms (one per
/// dimension), which keeps the draw sequence scriptable in tests.
std::optional<std::vector<double>> mate(std::size_t male_index, const Population& pop,
                                        std::span<const double> weights, double radius,
                                        const std::function<double()>& draw);
std::optional<std::vector<double>> mate(std::size_t male_index, const Population& pop,
                                        std::span<const double> weights, double radius,
                                        RandomStream& rng);

/// Replaces the lowest-weight spider (ties to the lowest index) when the
/// brood's weight is strictly greater. The slot keeps its gender and
/// index. Returns the replaced slot, or nothing when the brood is
/// discarded.
std::optional<std::size_t> survive_replace(Population& pop, std::vector<double>& weights,
                                           std::span<const double> brood_position,
                                           double brood_fitness, double brood_weight);

/// Per-iteration view for instrumentation; references are only valid
/// during the callback.
struct IterationSnapshot {
    std::size_t iteration;  // 1-based
    const Population& population;
    /// Weights the movement phase used (computed at the iteration start).
    std::span<const double> start_weights;
    double worst_fitness_before_mating;
    double worst_fitness_after_mating;
    double best_so_far;
};
using IterationObserver = std::function<void(const IterationSnapshot&)>;

/// Full optimization run. Per iteration: assign weights, move all females
/// then all males against the start-of-iteration snapshot, re-evaluate,
/// then let each dominant male mate in ascending index order with
/// immediate replacement. Deterministic per seed.
RunRecord run(const ObjectiveSpec& spec, const SsoParams& params,
              const IterationObserver& observer = {});

}  // namespace spider::sso
