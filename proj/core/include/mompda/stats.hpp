#pragma once

#include <span>

namespace mompda {

// Two-sided Wilcoxon rank-sum test with mid-ranks for ties. Exact
// permutation distribution when the combined sample size is at most 12,
// normal approximation with tie-corrected variance otherwise. Both samples
// need at least 3 observations.
double wilcoxon_rank_sum(std::span<const double> sample_a, std::span<const double> sample_b);

// min(1, p * comparisons).
double bonferroni(double p_value, int comparisons);

}  // namespace mompda
