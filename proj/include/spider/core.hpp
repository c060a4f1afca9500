#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spider/random.hpp"

namespace spider {

enum class Gender { Female, Male };

/// Axis-aligned search box with low[j] < high[j] on every axis.
class Bounds {
public:
    Bounds(std::vector<double> low, std::vector<double> high);

    /// Same [low, high] interval on every one of `dimension` axes.
    static Bounds cube(std::size_t dimension, double low, double high);

    std::size_t dimension() const { return low_.size(); }
    std::span<const double> low() const { return low_; }
    std::span<const double> high() const { return high_; }
    double width(std::size_t axis) const { return high_[axis] - low_[axis]; }

private:
    std::vector<double> low_;
    std::vector<double> high_;
};

/// One candidate solution. Fitness follows the minimization convention
/// (lower is better); weight is the normalized quality in [0,1] assigned
/// once per iteration.
struct Spider {
    std::vector<double> position;
    Gender gender = Gender::Female;
    double fitness = 0.0;
    double weight = 0.0;
};

/// Colony with a fixed gender layout: females at indices 0..n_female-1,
/// males after them. The layout survives every operator, including
/// offspring replacement.
struct Population {
    std::vector<Spider> spiders;
    std::size_t n_female = 0;
    std::size_t n_male = 0;
    Bounds bounds;

    std::size_t size() const { return spiders.size(); }
    bool is_male(std::size_t i) const { return i >= n_female; }
};

/// Black-box minimization target. `evaluate` must be deterministic given
/// the same input and the same random stream; only stochastic objectives
/// consume draws from the stream.
struct ObjectiveSpec {
    std::string name;
    std::size_t dimension = 0;
    Bounds bounds;
    std::function<double(std::span<const double>, RandomStream&)> evaluate;
    std::optional<double> optimum_value;
    std::optional<std::vector<double>> optimum_point;
};

/// Outcome of a single optimizer run.
struct RunRecord {
    std::vector<double> best_position;
    double best_fitness = 0.0;
    /// One entry per iteration; non-increasing.
    std::vector<double> best_so_far_trace;
    std::size_t evaluations = 0;
};

/// L2 distance. Throws std::invalid_argument on length mismatch.
double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// Componentwise projection of x into the box.
std::vector<double> clamp_to_bounds(std::span<const double> x, const Bounds& b);

}  // namespace spider
