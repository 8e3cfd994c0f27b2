#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mompda/core.hpp"
#include "mompda/rng.hpp"
#include "mompda/simulator.hpp"
#include "mompda/solution.hpp"

namespace mompda {

struct EngineConfig {
    int pop_size = 100;             // R, one subproblem per member
    int neighborhood_size = 0;      // T; 0 resolves to floor(0.1 * pop_size)
    double mating_pool_prob = 0.9;  // delta: neighborhood mating pool probability
    double crossover_prob = 0.9;    // delta_g: crossover vs mutation branch
    int dra_interval = 50;          // generations between utility refreshes
    int selected_count = 0;         // tournament picks per generation; 0 -> floor(pop/5) - 2
    long long nfe_budget = 50000;
    int weight_count = 11;          // |W| for the heuristic initialiser
    int repair_attempts = 10;

    int resolved_neighborhood() const;
    int resolved_selected() const;
    void validate() const;
};

struct Subproblem {
    int index = 0;
    double epsilon = 0.0;
    int robot_budget = 1;
    SolutionMatrix incumbent;
    Evaluation incumbent_eval;
    double utility = 1.0;  // pi^i, drives dynamic resource allocation
    std::vector<int> neighborhood;
};

struct ArchiveEntry {
    SolutionMatrix solution;
    ObjectiveVector objectives;
};

// Mutually non-dominated feasible solutions found so far.
struct ParetoArchive {
    std::vector<ArchiveEntry> entries;

    std::size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }
};

// epsilon_l = (l-1)/(R-1) for l = 1..R.
std::vector<double> epsilon_grid(int count);

// floor(eps * (UBM - LBM) + LBM).
int robot_budget(double epsilon, const RobotBounds& bounds);

// For each grid value, the indexes of the T closest grid values (self
// included), ties broken by index. Returned lists are sorted ascending.
std::vector<std::vector<int>> build_neighborhoods(std::span<const double> grid, int neighborhood_size);

// Rows reordered ascending by (invalid-element count, lexicographic content).
// Collapses the encoding redundancy of interchangeable robots before
// crossover lines up row pairs.
SolutionMatrix canonical_sort(const SolutionMatrix& solution, const Evaluation& evaluation);

// Partially matched crossover with explicit cut positions (0-based,
// inclusive). Child i keeps parent i's segment and fills the rest from the
// other parent through the segment mapping.
std::pair<std::vector<int>, std::vector<int>> pmx_with_cuts(std::span<const int> parent1,
                                                            std::span<const int> parent2, int cut_lo, int cut_hi);

std::pair<std::vector<int>, std::vector<int>> pmx(std::span<const int> parent1, std::span<const int> parent2,
                                                  Rng& rng);

// Exchanges two uniformly chosen positions in every row.
SolutionMatrix swap_mutation(const SolutionMatrix& solution, Rng& rng);

// Crossover branch (probability crossover_prob): canonical-sort both parents,
// then row-wise PMX; fleets of unequal size additionally yield up to
// min(C(m_b, m_a), 10) row-subset children and two verbatim row-swap
// children. Mutation branch: one swap mutation of each parent.
std::vector<SolutionMatrix> reproduce(const SolutionMatrix& parent_a, const Evaluation& eval_a,
                                      const SolutionMatrix& parent_b, const Evaluation& eval_b,
                                      double crossover_prob, Rng& rng);

// Among subproblems whose budget constraint the solution satisfies, the one
// with the worst (largest) incumbent makespan; if none is satisfied, the one
// with the least violation.
int match_subproblem(const Evaluation& evaluation, std::span<const Subproblem> subproblems,
                     const RobotBounds& bounds);

// Feasibility rule under a robot budget: smaller budget violation wins,
// ties decided by smaller penalised makespan. Strict improvement only.
bool beats_for_subproblem(const Evaluation& challenger, const Evaluation& incumbent, int budget);

// Applies the feasibility rule to subproblem k and each of its neighbors, in
// ascending index order.
void replace_if_better(const SolutionMatrix& solution, const Evaluation& evaluation, int k,
                       std::vector<Subproblem>& subproblems);

// Inserts a feasible evaluation unless dominated or duplicated; drops entries
// it dominates. Returns true when inserted.
bool archive_update(ParetoArchive& archive, const SolutionMatrix& solution, const Evaluation& evaluation);

// Refreshes utilities every dra_interval generations (relative incumbent
// improvement above 0.1% resets the utility to 1, otherwise it decays), then
// selects the two boundary subproblems plus `selected_count` 10-candidate
// tournament winners.
std::vector<int> dra_update_and_select(std::vector<Subproblem>& subproblems, int generation, int dra_interval,
                                       int selected_count, std::vector<double>& reference_makespans, Rng& rng);

struct GenerationLog {
    int generation = 0;
    long long evaluations = 0;
    int archive_size = 0;
    // Best feasible makespan per fleet size currently in the archive.
    std::vector<std::pair<int, double>> best_by_budget;
};

struct EngineStats {
    long long evaluations = 0;
    int generations = 0;
};

ParetoArchive run_hdmoea(const Instance& instance, const EngineConfig& config, std::uint64_t seed,
                         std::vector<GenerationLog>* log = nullptr, EngineStats* stats = nullptr);

}  // namespace mompda
