#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mompda/core.hpp"
#include "mompda/hdmoea.hpp"

namespace mompda {

struct BaselineConfig {
    int pop_size = 100;
    long long nfe_budget = 50000;
    double crossover_prob = 0.9;
    double mating_pool_prob = 0.9;  // MOEA/D only
    int neighborhood_size = 0;      // MOEA/D only; 0 -> floor(0.1 * pop_size)
    bool dra = false;               // MOEA/D-DRA toggle
    int dra_interval = 50;
    int selected_count = 0;  // MOEA/D-DRA; 0 -> floor(pop/5) - 2

    void validate() const;
};

struct SortResult {
    std::vector<std::vector<int>> fronts;  // indexes grouped by rank
    std::vector<int> rank;
    std::vector<double> crowding;  // +inf at front boundaries
};

// Fast non-dominated sort; crowding distances computed per front on the
// normalized objectives.
SortResult nondominated_sort(std::span<const ObjectiveVector> objectives, const RobotBounds& bounds);

// Generational NSGA-II over the shared encoding: random initial fleets drawn
// uniformly from [LBM, UBM], binary tournament on (rank, crowding), the
// shared reproduction operator, elitist (rank, crowding) truncation. Returns
// the non-dominated feasible subset of the final population.
ParetoArchive run_nsga2(const Instance& instance, const BaselineConfig& config, std::uint64_t seed,
                        std::vector<GenerationLog>* log = nullptr);

// MOEA/D with Tchebycheff aggregation over the normalized objectives,
// uniform weights, neighborhood mating/replacement and an external archive.
// config.dra enables utility-driven subproblem selection.
ParetoArchive run_moead(const Instance& instance, const BaselineConfig& config, std::uint64_t seed,
                        std::vector<GenerationLog>* log = nullptr);

// Uniformly random fleets and permutations; the non-dominated feasible
// subset of everything sampled.
ParetoArchive run_random_search(const Instance& instance, const BaselineConfig& config, std::uint64_t seed,
                                std::vector<GenerationLog>* log = nullptr);

}  // namespace mompda
