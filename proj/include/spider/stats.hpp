#pragma once

#include <cstddef>
#include <span>

namespace spider::stats {

struct RunSummary {
    double ab = 0.0;  // mean of final best-so-far values
    double mb = 0.0;  // median (mean of the middle pair for even counts)
    double sd = 0.0;  // sample standard deviation, n-1 denominator
    std::size_t n_runs = 0;
};

/// Throws std::invalid_argument on an empty sample.
RunSummary summarize(std::span<const double> final_bests);

/// Two-sided Wilcoxon rank-sum p-value for independent samples. Midranks
/// for ties; exact enumeration of the rank-sum distribution when the
/// pooled size is at most 12 and there are no ties, otherwise the normal
/// approximation with tie-corrected variance and continuity correction.
/// Requires at least 3 observations per sample.
double wilcoxon_ranksum(std::span<const double> a, std::span<const double> b);

}  // namespace spider::stats
