#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "spider/random.hpp"
#include "spider/stats.hpp"

using namespace spider;
using namespace spider::stats;

namespace {

// independent oracle: walk every assignment of pooled ranks to sample a
// and count the ones at least as far from the mean rank sum
double enumerate_ranksum_p(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t na = a.size();
    const std::size_t n = na + b.size();

    std::vector<double> pooled(a);
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });
    std::vector<double> rank_of(n);
    for (std::size_t r = 0; r < n; ++r) rank_of[order[r]] = static_cast<double>(r + 1);

    double observed = 0.0;
    for (std::size_t i = 0; i < na; ++i) observed += rank_of[i];
    const double mean = static_cast<double>(na) * static_cast<double>(n + 1) / 2.0;
    const double observed_dev = std::abs(observed - mean);

    std::vector<bool> selector(n, false);
    std::fill(selector.begin(), selector.begin() + na, true);
    std::sort(selector.begin(), selector.end());  // lowest permutation first

    std::size_t extreme = 0, total = 0;
    do {
        double sum = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            if (selector[r]) sum += static_cast<double>(r + 1);
        ++total;
        if (std::abs(sum - mean) >= observed_dev - 1e-12) ++extreme;
    } while (std::next_permutation(selector.begin(), selector.end()));

    return static_cast<double>(extreme) / static_cast<double>(total);
}

}  // namespace

TEST_CASE("summarize") {
    const auto s = summarize(std::vector{1.0, 2.0, 3.0});
    CHECK(s.ab == 2.0);
    CHECK(s.mb == 2.0);
    CHECK(s.sd == 1.0);
    CHECK(s.n_runs == 3);

    const auto single = summarize(std::vector{5.0});
    CHECK(single.ab == 5.0);
    CHECK(single.mb == 5.0);
    CHECK(single.sd == 0.0);

    CHECK(summarize(std::vector{1.0, 2.0, 3.0, 100.0}).mb == 2.5);

    CHECK_THROWS_AS(summarize(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("wilcoxon rejects undersized samples") {
    CHECK_THROWS_AS(wilcoxon_ranksum(std::vector{1.0, 2.0}, std::vector{1.0, 2.0, 3.0}),
                    std::invalid_argument);
}

TEST_CASE("wilcoxon canonical values") {
    // identical samples carry no evidence at all
    const std::vector<double> same = {4.0, 1.0, 2.5, 7.0};
    CHECK(wilcoxon_ranksum(same, same) == 1.0);

    // fully separated triples: 2 of the 20 rank splits are as extreme
    CHECK(wilcoxon_ranksum(std::vector{1.0, 2.0, 3.0}, std::vector{4.0, 5.0, 6.0}) ==
          doctest::Approx(0.1).epsilon(1e-12));

    // thirty-vs-thirty samples ten standard deviations apart
    RandomStream rng(5);
    std::vector<double> lo(30), hi(30);
    for (auto& v : lo) v = rng.uniform();          // spread ~ O(1)
    for (auto& v : hi) v = 10.0 + rng.uniform();   // shifted far beyond the spread
    CHECK(wilcoxon_ranksum(lo, hi) < 0.05);
}

TEST_CASE("wilcoxon invariances") {
    RandomStream rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> a(3 + rng.uniform_index(15));
        std::vector<double> b(3 + rng.uniform_index(15));
        for (auto& v : a) v = rng.uniform(-4.0, 4.0);
        for (auto& v : b) v = rng.uniform(-4.0, 4.0);

        const double p = wilcoxon_ranksum(a, b);
        CHECK(p > 0.0);
        CHECK(p <= 1.0);
        CHECK(wilcoxon_ranksum(b, a) == doctest::Approx(p).epsilon(1e-12));

        auto a_shift = a, b_shift = b;
        for (auto& v : a_shift) v += 13.25;
        for (auto& v : b_shift) v += 13.25;
        CHECK(wilcoxon_ranksum(a_shift, b_shift) == doctest::Approx(p).epsilon(1e-12));

        auto a_scale = a, b_scale = b;
        for (auto& v : a_scale) v *= 7.5;
        for (auto& v : b_scale) v *= 7.5;
        CHECK(wilcoxon_ranksum(a_scale, b_scale) == doctest::Approx(p).epsilon(1e-12));
    }
}

TEST_CASE("exact mode matches full enumeration on tie-free inputs") {
    RandomStream rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t na = 3 + rng.uniform_index(3);            // 3..5
        const std::size_t nb = 3 + rng.uniform_index(10 - na - 2);  // total <= 10
        std::vector<double> a(na), b(nb);
        for (auto& v : a) v = rng.uniform(-100.0, 100.0);
        for (auto& v : b) v = rng.uniform(-100.0, 100.0);
        CHECK(wilcoxon_ranksum(a, b) ==
              doctest::Approx(enumerate_ranksum_p(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("ties fall back to the corrected approximation") {
    // heavy ties but a clear shift
    const std::vector<double> a = {1.0, 1.0, 1.0, 2.0, 2.0, 2.0};
    const std::vector<double> b = {9.0, 9.0, 9.0, 8.0, 8.0, 8.0};
    const double p = wilcoxon_ranksum(a, b);
    CHECK(p > 0.0);
    CHECK(p < 0.05);

    // constant pooled sample: no information
    const std::vector<double> c = {3.0, 3.0, 3.0};
    CHECK(wilcoxon_ranksum(c, c) == 1.0);
}
