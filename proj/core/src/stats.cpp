#include "mompda/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace mompda {

namespace {

// Mid-ranks of the combined sample; result aligned with `values`.
std::vector<double> midranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double shared = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

// Counts rank-sum outcomes <= and >= the observed one over every way of
// assigning na of the n positions to sample A.
void enumerate_splits(const std::vector<double>& ranks, std::size_t next, std::size_t remaining, double sum,
                      double observed, long long& le, long long& ge, long long& total) {
    if (remaining == 0) {
        ++total;
        if (sum <= observed + 1e-9) ++le;
        if (sum >= observed - 1e-9) ++ge;
        return;
    }
    if (ranks.size() - next < remaining) return;
    enumerate_splits(ranks, next + 1, remaining - 1, sum + ranks[next], observed, le, ge, total);
    enumerate_splits(ranks, next + 1, remaining, sum, observed, le, ge, total);
}

}  // namespace

double wilcoxon_rank_sum(std::span<const double> sample_a, std::span<const double> sample_b) {
    const std::size_t na = sample_a.size();
    const std::size_t nb = sample_b.size();
    if (na < 3 || nb < 3) throw std::invalid_argument("wilcoxon_rank_sum: both samples need >= 3 values");
    const std::size_t n = na + nb;

    std::vector<double> combined;
    combined.reserve(n);
    combined.insert(combined.end(), sample_a.begin(), sample_a.end());
    combined.insert(combined.end(), sample_b.begin(), sample_b.end());
    const std::vector<double> ranks = midranks(combined);

    double observed = 0.0;
    for (std::size_t i = 0; i < na; ++i) observed += ranks[i];

    if (n <= 12) {
        long long le = 0, ge = 0, total = 0;
        enumerate_splits(ranks, 0, na, 0.0, observed, le, ge, total);
        const double p = 2.0 * static_cast<double>(std::min(le, ge)) / static_cast<double>(total);
        return std::min(1.0, p);
    }

    const double mean = static_cast<double>(na) * (n + 1) / 2.0;
    // Tie correction on the variance.
    double tie_term = 0.0;
    std::vector<double> sorted = combined;
    std::sort(sorted.begin(), sorted.end());
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        tie_term += t * t * t - t;
        i = j + 1;
    }
    const double variance = static_cast<double>(na) * nb / 12.0 *
                            ((n + 1) - tie_term / (static_cast<double>(n) * (n - 1)));
    if (variance <= 0.0) return 1.0;  // every observation tied

    const double z = (observed - mean) / std::sqrt(variance);
    return std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0)));
}

double bonferroni(double p_value, int comparisons) {
    if (comparisons < 1) throw std::invalid_argument("bonferroni: comparisons must be positive");
    return std::min(1.0, p_value * comparisons);
}

}  // namespace mompda
