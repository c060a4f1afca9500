#include "spider/benchmarks.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spider::benchmarks {
namespace {

using std::numbers::e;
using std::numbers::pi;

inline double sq(double v) { return v * v; }

double sphere(std::span<const double> x, RandomStream&) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

double schwefel_222(std::span<const double> x, RandomStream&) {
    double sum = 0.0, prod = 1.0;
    for (double v : x) {
        sum += std::abs(v);
        prod *= std::abs(v);
    }
    return sum + prod;
}

double schwefel_12(std::span<const double> x, RandomStream&) {
    double s = 0.0, prefix = 0.0;
    for (double v : x) {
        prefix += v;
        s += prefix * prefix;
    }
    return s;
}

double schwefel_226_sum(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += -v * std::sin(std::sqrt(std::abs(v)));
    return s;
}

double schwefel_offset(std::span<const double> x, RandomStream&) {
    return 418.9829 * static_cast<double>(x.size()) + schwefel_226_sum(x);
}

double rosenbrock(std::span<const double> x, RandomStream&) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        s += 100.0 * sq(x[i + 1] - x[i] * x[i]) + sq(x[i] - 1.0);
    return s;
}

double step_fn(std::span<const double> x, RandomStream&) {
    double s = 0.0;
    for (double v : x) s += sq(std::floor(v + 0.5));
    return s;
}

double quartic_noisy(std::span<const double> x, RandomStream& rng) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += static_cast<double>(i + 1) * sq(sq(x[i]));
    return s + rng.uniform();  // exactly one draw per evaluation
}

double dixon_price(std::span<const double> x, RandomStream&) {
    double s = sq(x[0] - 1.0);
    for (std::size_t i = 1; i < x.size(); ++i)
        s += static_cast<double>(i + 1) * sq(2.0 * x[i] * x[i] - x[i - 1]);
    return s;
}

double levy(std::span<const double> x, RandomStream&) {
    const std::size_t n = x.size();
    double core = sq(std::sin(3.0 * pi * x[0]));
    for (std::size_t i = 0; i < n; ++i)
        core += sq(x[i] - 1.0) * (1.0 + sq(std::sin(3.0 * pi * x[i] + 1.0)));
    core += sq(x[n - 1] - 1.0) * (1.0 + sq(std::sin(2.0 * pi * x[n - 1])));
    double penalty = 0.0;
    for (double v : x) penalty += penalty_u(v, 5.0, 100.0, 4.0);
    return 0.1 * core + penalty;
}

double sum_squares(std::span<const double> x, RandomStream&) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += static_cast<double>(i + 1) * x[i] * x[i];
    return s;
}

double zakharov(std::span<const double> x, RandomStream&) {
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s1 += x[i] * x[i];
        s2 += 0.5 * static_cast<double>(i + 1) * x[i];
    }
    return s1 + sq(s2) + sq(sq(s2));
}

double penalized(std::span<const double> x, RandomStream&) {
    const std::size_t n = x.size();
    auto y = [](double v) { return 1.0 + (v + 1.0) / 4.0; };
    double core = 10.0 * sq(std::sin(pi * y(x[0])));
    for (std::size_t i = 0; i + 1 < n; ++i)
        core += sq(y(x[i]) - 1.0) * (1.0 + 10.0 * sq(std::sin(pi * y(x[i + 1]))));
    core += sq(y(x[n - 1]) - 1.0);
    double penalty = 0.0;
    for (double v : x) penalty += penalty_u(v, 10.0, 100.0, 4.0);
    return pi / static_cast<double>(n) * core + penalty;
}

double penalized2(std::span<const double> x, RandomStream&) {
    const std::size_t n = x.size();
    double core = sq(std::sin(3.0 * pi * x[0]));
    for (std::size_t i = 0; i < n; ++i)
        core += sq(x[i] - 1.0) * (1.0 + sq(std::sin(3.0 * pi * x[i] + 1.0)));
    core += static_cast<double>(n) * sq(x[n - 1] - 1.0) *
            (1.0 + sq(std::sin(2.0 * pi * x[n - 1])));
    double penalty = 0.0;
    for (double v : x) penalty += penalty_u(v, 5.0, 100.0, 4.0);
    return 0.1 * core + penalty;
}

double schwefel_226(std::span<const double> x, RandomStream&) {
    return schwefel_226_sum(x);
}

double rastrigin(std::span<const double> x, RandomStream&) {
    double s = 0.0;
    for (double v : x) s += v * v - 10.0 * std::cos(2.0 * pi * v) + 10.0;
    return s;
}

double ackley(std::span<const double> x, RandomStream&) {
    const auto n = static_cast<double>(x.size());
    double ss = 0.0, sc = 0.0;
    for (double v : x) {
        ss += v * v;
        sc += std::cos(2.0 * pi * v);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(ss / n)) - std::exp(sc / n) + 20.0 + e;
}

double griewank(std::span<const double> x, RandomStream&) {
    double s = 0.0, p = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += x[i] * x[i];
        p *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return s / 4000.0 - p + 1.0;
}

double powell(std::span<const double> x, RandomStream&) {
    double s = 0.0;
    for (std::size_t b = 0; b + 4 <= x.size(); b += 4) {
        const double a = x[b], c = x[b + 1], d = x[b + 2], f = x[b + 3];
        s += sq(a + 10.0 * c) + 5.0 * sq(d - f) + sq(sq(c - d)) + 10.0 * sq(sq(a - f));
    }
    return s;
}

double salomon(std::span<const double> x, RandomStream&) {
    double ss = 0.0;
    for (double v : x) ss += v * v;
    const double r = std::sqrt(ss);
    return -std::cos(2.0 * pi * r) + 0.1 * r + 1.0;
}

// coordinate of the one-dimensional minimizer of -v*sin(sqrt(|v|)) on
// [-500, 500], shared by every axis of the Schwefel optimum
constexpr double kSchwefelOpt = 420.9687462275036;

using EvalFn = double (*)(std::span<const double>, RandomStream&);

enum class OptPoint { Origin, Ones, MinusOnes, Schwefel };

struct Def {
    const char* id;
    const char* name;
    double low;
    double high;
    EvalFn eval;
    bool testable;
    OptPoint point;
    bool schwefel_value;  // optimum value scales as -418.9829 * n
};

constexpr Def kDefs[] = {
    {"f1", "Sphere", -100.0, 100.0, sphere, true, OptPoint::Origin, false},
    {"f2", "Schwefel 2.22", -10.0, 10.0, schwefel_222, true, OptPoint::Origin, false},
    {"f3", "Schwefel 1.2", -100.0, 100.0, schwefel_12, true, OptPoint::Origin, false},
    {"f4", "Schwefel offset", -100.0, 100.0, schwefel_offset, false, OptPoint::Origin, false},
    {"f5", "Rosenbrock", -30.0, 30.0, rosenbrock, true, OptPoint::Ones, false},
    {"f6", "Step", -100.0, 100.0, step_fn, true, OptPoint::Origin, false},
    {"f7", "Quartic", -1.28, 1.28, quartic_noisy, false, OptPoint::Origin, false},
    {"f8", "Dixon-Price", -10.0, 10.0, dixon_price, false, OptPoint::Origin, false},
    {"f9", "Levy", -10.0, 10.0, levy, true, OptPoint::Ones, false},
    {"f10", "Sum Squares", -10.0, 10.0, sum_squares, true, OptPoint::Origin, false},
    {"f11", "Zakharov", -5.0, 10.0, zakharov, true, OptPoint::Origin, false},
    {"f12", "Penalized", -50.0, 50.0, penalized, true, OptPoint::MinusOnes, false},
    {"f13", "Penalized 2", -50.0, 50.0, penalized2, true, OptPoint::Ones, false},
    {"f14", "Schwefel", -500.0, 500.0, schwefel_226, false, OptPoint::Schwefel, true},
    {"f15", "Rastrigin", -5.12, 5.12, rastrigin, true, OptPoint::Origin, false},
    {"f16", "Ackley", -32.0, 32.0, ackley, true, OptPoint::Origin, false},
    {"f17", "Griewank", -600.0, 600.0, griewank, true, OptPoint::Origin, false},
    {"f18", "Powell", -4.0, 5.0, powell, true, OptPoint::Origin, false},
    {"f19", "Salomon", -100.0, 100.0, salomon, true, OptPoint::Origin, false},
};

ObjectiveSpec build_spec(const Def& def, std::size_t n) {
    double coordinate = 0.0;
    switch (def.point) {
        case OptPoint::Origin: coordinate = 0.0; break;
        case OptPoint::Ones: coordinate = 1.0; break;
        case OptPoint::MinusOnes: coordinate = -1.0; break;
        case OptPoint::Schwefel: coordinate = kSchwefelOpt; break;
    }
    return ObjectiveSpec{
        def.name,
        n,
        Bounds::cube(n, def.low, def.high),
        def.eval,
        def.schwefel_value ? -418.9829 * static_cast<double>(n) : 0.0,
        std::vector<double>(n, coordinate),
    };
}

}  // namespace

double penalty_u(double x, double a, double k, double m) {
    if (x > a) return k * std::pow(x - a, m);
    if (x < -a) return k * std::pow(-x - a, m);
    return 0.0;
}

const std::vector<BenchmarkEntry>& list_functions() {
    static const std::vector<BenchmarkEntry> registry = [] {
        std::vector<BenchmarkEntry> entries;
        entries.reserve(std::size(kDefs));
        for (const Def& def : kDefs)
            entries.push_back(BenchmarkEntry{def.id, def.name,
                                             build_spec(def, kDefaultDimension),
                                             def.testable});
        return entries;
    }();
    return registry;
}

bool is_function_id(const std::string& id) {
    for (const Def& def : kDefs)
        if (id == def.id) return true;
    return false;
}

const BenchmarkEntry& find_function(const std::string& id) {
    for (const BenchmarkEntry& entry : list_functions())
        if (entry.id == id) return entry;
    throw std::invalid_argument("unknown benchmark function id '" + id + "'");
}

ObjectiveSpec make_objective(const std::string& id, std::size_t dimension) {
    if (dimension == 0) throw std::invalid_argument("dimension must be positive");
    for (const Def& def : kDefs)
        if (id == def.id) return build_spec(def, dimension);
    throw std::invalid_argument("unknown benchmark function id '" + id + "'");
}

double evaluate(const std::string& id, std::span<const double> x, RandomStream& rng) {
    const BenchmarkEntry& entry = find_function(id);
    if (x.size() != entry.spec.dimension)
        throw std::invalid_argument("evaluate: input length does not match dimension of " + id);
    return entry.spec.evaluate(x, rng);
}

}  // namespace spider::benchmarks
