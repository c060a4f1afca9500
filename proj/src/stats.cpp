#include "spider/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <vector>

namespace spider::stats {

RunSummary summarize(std::span<const double> final_bests) {
    if (final_bests.empty()) throw std::invalid_argument("summarize: empty sample");
    const std::size_t n = final_bests.size();

    RunSummary out;
    out.n_runs = n;

    double sum = 0.0;
    for (double v : final_bests) sum += v;
    out.ab = sum / static_cast<double>(n);

    std::vector<double> sorted(final_bests.begin(), final_bests.end());
    std::sort(sorted.begin(), sorted.end());
    out.mb = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

    if (n > 1) {
        double ss = 0.0;
        for (double v : final_bests) ss += (v - out.ab) * (v - out.ab);
        out.sd = std::sqrt(ss / static_cast<double>(n - 1));
    }
    return out;
}

namespace {

struct RankedSamples {
    double rank_sum_a = 0.0;      // midrank sum of sample a
    bool has_ties = false;
    double tie_correction = 0.0;  // sum of t^3 - t over tie groups
};

RankedSamples pool_and_rank(std::span<const double> a, std::span<const double> b) {
    struct Obs {
        double value;
        bool from_a;
    };
    std::vector<Obs> pooled;
    pooled.reserve(a.size() + b.size());
    for (double v : a) pooled.push_back({v, true});
    for (double v : b) pooled.push_back({v, false});
    std::sort(pooled.begin(), pooled.end(),
              [](const Obs& x, const Obs& y) { return x.value < y.value; });

    RankedSamples out;
    std::size_t i = 0;
    while (i < pooled.size()) {
        std::size_t j = i;
        while (j < pooled.size() && pooled[j].value == pooled[i].value) ++j;
        const std::size_t t = j - i;
        // midrank shared by the whole tie group, 1-based
        const double rank = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t k = i; k < j; ++k)
            if (pooled[k].from_a) out.rank_sum_a += rank;
        if (t > 1) {
            out.has_ties = true;
            out.tie_correction += static_cast<double>(t * t * t - t);
        }
        i = j;
    }
    return out;
}

double exact_two_sided_p(double rank_sum_a, std::size_t na, std::size_t n) {
    // distribution of the rank sum over all equally likely assignments of
    // the integer ranks 1..n to sample a, counted by subset size and sum
    const std::size_t smax = n * (n + 1) / 2;
    std::vector<std::vector<unsigned long long>> count(
        na + 1, std::vector<unsigned long long>(smax + 1, 0));
    count[0][0] = 1;
    for (std::size_t r = 1; r <= n; ++r)
        for (std::size_t k = std::min(r, na); k >= 1; --k)
            for (std::size_t s = smax; s >= r; --s)
                count[k][s] += count[k - 1][s - r];

    const long long center = static_cast<long long>(na * (n + 1));
    const long long twice_dev =
        std::llabs(2 * std::llround(rank_sum_a) - center);

    unsigned long long extreme = 0, total = 0;
    for (std::size_t s = 0; s <= smax; ++s) {
        total += count[na][s];
        if (std::llabs(2 * static_cast<long long>(s) - center) >= twice_dev)
            extreme += count[na][s];
    }
    return static_cast<double>(extreme) / static_cast<double>(total);
}

}  // namespace

double wilcoxon_ranksum(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 3 || b.size() < 3)
        throw std::invalid_argument("wilcoxon_ranksum: need at least 3 observations per sample");

    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    const std::size_t n = na + nb;
    const RankedSamples ranked = pool_and_rank(a, b);

    if (!ranked.has_ties && n <= 12)
        return exact_two_sided_p(ranked.rank_sum_a, na, n);

    const double mu = static_cast<double>(na) * static_cast<double>(n + 1) / 2.0;
    const double variance =
        static_cast<double>(na) * static_cast<double>(nb) / 12.0 *
        (static_cast<double>(n + 1) -
         ranked.tie_correction / (static_cast<double>(n) * static_cast<double>(n - 1)));
    if (!(variance > 0.0)) return 1.0;  // every pooled value identical

    double z = (std::abs(ranked.rank_sum_a - mu) - 0.5) / std::sqrt(variance);
    if (z < 0.0) z = 0.0;
    const double p = std::erfc(z / std::sqrt(2.0));
    return std::clamp(p, std::numeric_limits<double>::min(), 1.0);
}

}  // namespace spider::stats
