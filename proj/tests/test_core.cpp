#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "spider/core.hpp"
#include "spider/random.hpp"

using namespace spider;

TEST_CASE("euclidean_distance basics") {
    CHECK(euclidean_distance(std::vector{0.0, 0.0}, std::vector{0.0, 0.0}) == 0.0);
    CHECK(euclidean_distance(std::vector{0.0, 0.0}, std::vector{3.0, 4.0}) == 5.0);
    // colony example: distance between (0.4,1.0) and (0.9,0.7)
    CHECK(euclidean_distance(std::vector{0.4, 1.0}, std::vector{0.9, 0.7}) ==
          doctest::Approx(std::sqrt(0.34)).epsilon(1e-12));
    CHECK_THROWS_AS(euclidean_distance(std::vector{1.0}, std::vector{1.0, 2.0}),
                    std::invalid_argument);
}

TEST_CASE("euclidean_distance symmetry and triangle inequality") {
    RandomStream rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> a(4), b(4), c(4);
        for (int j = 0; j < 4; ++j) {
            a[j] = rng.uniform(-10.0, 10.0);
            b[j] = rng.uniform(-10.0, 10.0);
            c[j] = rng.uniform(-10.0, 10.0);
        }
        CHECK(euclidean_distance(a, b) == euclidean_distance(b, a));
        CHECK(euclidean_distance(a, c) <=
              euclidean_distance(a, b) + euclidean_distance(b, c) + 1e-12);
    }
}

TEST_CASE("clamp_to_bounds") {
    const Bounds box = Bounds::cube(2, -1.0, 1.0);
    CHECK(clamp_to_bounds(std::vector{0.0, 0.0}, box) == std::vector{0.0, 0.0});
    CHECK(clamp_to_bounds(std::vector{5.0, -5.0}, box) == std::vector{1.0, -1.0});

    const Bounds unit = Bounds::cube(1, 0.0, 1.0);
    CHECK(clamp_to_bounds(std::vector{1.0000001}, unit) == std::vector{1.0});

    RandomStream rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> x(2);
        for (auto& v : x) v = rng.uniform(-5.0, 5.0);
        const auto once = clamp_to_bounds(x, box);
        CHECK(clamp_to_bounds(once, box) == once);  // idempotent
        for (std::size_t j = 0; j < once.size(); ++j) {
            CHECK(once[j] >= box.low()[j]);
            CHECK(once[j] <= box.high()[j]);
        }
    }
}

TEST_CASE("bounds validation") {
    CHECK_THROWS_AS(Bounds({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(Bounds({0.0}, {0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(Bounds({1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(Bounds({2.0}, {1.0}), std::invalid_argument);
    const Bounds b({-1.0, 0.0}, {1.0, 4.0});
    CHECK(b.dimension() == 2);
    CHECK(b.width(1) == 4.0);
}

TEST_CASE("random streams replay exactly per seed") {
    RandomStream a(12345), b(12345), other(54321);
    bool all_equal = true;
    bool in_range = true;
    bool any_difference = false;
    for (int i = 0; i < 1'000'000; ++i) {
        const double x = a.uniform();
        const double y = b.uniform();
        all_equal = all_equal && x == y;
        in_range = in_range && x >= 0.0 && x < 1.0;
        any_difference = any_difference || x != other.uniform();
    }
    CHECK(all_equal);
    CHECK(in_range);
    CHECK(any_difference);
}

TEST_CASE("substreams are stable and decoupled") {
    RandomStream root(7);
    RandomStream s1 = root.substream(1);
    root.uniform();  // consuming the parent must not shift the derivation
    RandomStream s1_again = root.substream(1);
    for (int i = 0; i < 100; ++i) CHECK(s1.uniform() == s1_again.uniform());

    RandomStream s2 = root.substream(2);
    bool differs = false;
    RandomStream s1_b = root.substream(1);
    for (int i = 0; i < 100; ++i) differs = differs || s1_b.uniform() != s2.uniform();
    CHECK(differs);
}

TEST_CASE("uniform_index stays within range") {
    RandomStream rng(11);
    for (int i = 0; i < 10000; ++i) {
        CHECK(rng.uniform_index(7) < 7);
        CHECK(rng.uniform_index(1) == 0);
    }
}
