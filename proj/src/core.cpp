#include "spider/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spider {

Bounds::Bounds(std::vector<double> low, std::vector<double> high)
    : low_(std::move(low)), high_(std::move(high)) {
    if (low_.empty() || low_.size() != high_.size())
        throw std::invalid_argument("bounds vectors must be non-empty and of equal length");
    for (std::size_t j = 0; j < low_.size(); ++j)
        if (!(low_[j] < high_[j]))
            throw std::invalid_argument("bounds must satisfy low < high on every axis");
}

Bounds Bounds::cube(std::size_t dimension, double low, double high) {
    return Bounds(std::vector<double>(dimension, low), std::vector<double>(dimension, high));
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("euclidean_distance: length mismatch");
    double sum = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        sum += d * d;
    }
    return std::sqrt(sum);
}

std::vector<double> clamp_to_bounds(std::span<const double> x, const Bounds& b) {
    if (x.size() != b.dimension())
        throw std::invalid_argument("clamp_to_bounds: length mismatch");
    std::vector<double> out(x.begin(), x.end());
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = std::clamp(out[j], b.low()[j], b.high()[j]);
    return out;
}

}  // namespace spider
