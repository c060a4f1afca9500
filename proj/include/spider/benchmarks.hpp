#pragma once

#include <span>
#include <string>
#include <vector>

#include "spider/core.hpp"

namespace spider::benchmarks {

inline constexpr std::size_t kDefaultDimension = 30;

struct BenchmarkEntry {
    std::string id;    // stable identifier, f1..f19
    std::string name;
    ObjectiveSpec spec;  // at the default dimension
    /// Whether |evaluate(x*) - f(x*)| <= 1e-6 is asserted in tests.
    bool optimum_testable = false;
};

/// Boundary penalty: 0 inside [-a, a], k*(x-a)^m above, k*(-x-a)^m below.
double penalty_u(double x, double a, double k, double m);

/// The registry, in id order f1..f19.
const std::vector<BenchmarkEntry>& list_functions();

bool is_function_id(const std::string& id);

/// Throws std::invalid_argument on an unknown id.
const BenchmarkEntry& find_function(const std::string& id);

/// Objective for `id` at an arbitrary dimension (unit-test use; the
/// registry itself is fixed at kDefaultDimension).
ObjectiveSpec make_objective(const std::string& id, std::size_t dimension);

/// Evaluate by id at the registry dimension. Throws on unknown id or
/// length mismatch. Only f7 consumes draws from the stream.
double evaluate(const std::string& id, std::span<const double> x, RandomStream& rng);

}  // namespace spider::benchmarks
