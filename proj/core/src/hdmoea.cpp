#include "mompda/hdmoea.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "mompda/construction.hpp"

namespace mompda {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

int EngineConfig::resolved_neighborhood() const {
    const int t = neighborhood_size > 0 ? neighborhood_size : pop_size / 10;
    return std::clamp(t, 1, pop_size);
}

int EngineConfig::resolved_selected() const {
    const int s = selected_count > 0 ? selected_count : pop_size / 5 - 2;
    return std::max(1, s);
}

void EngineConfig::validate() const {
    if (pop_size < 2) throw std::invalid_argument("EngineConfig: pop_size must be >= 2");
    if (mating_pool_prob < 0.0 || mating_pool_prob > 1.0)
        throw std::invalid_argument("EngineConfig: mating_pool_prob outside [0,1]");
    if (crossover_prob < 0.0 || crossover_prob > 1.0)
        throw std::invalid_argument("EngineConfig: crossover_prob outside [0,1]");
    if (dra_interval < 1) throw std::invalid_argument("EngineConfig: dra_interval must be positive");
    if (nfe_budget < 0) throw std::invalid_argument("EngineConfig: nfe_budget must be non-negative");
    if (weight_count < 2) throw std::invalid_argument("EngineConfig: weight_count must be >= 2");
}

std::vector<double> epsilon_grid(int count) {
    if (count < 2) throw std::invalid_argument("epsilon_grid: need at least two subproblems");
    std::vector<double> grid(count);
    for (int l = 0; l < count; ++l) grid[l] = static_cast<double>(l) / (count - 1);
    return grid;
}

int robot_budget(double epsilon, const RobotBounds& bounds) {
    return static_cast<int>(std::floor(epsilon * (bounds.ubm - bounds.lbm) + bounds.lbm));
}

std::vector<std::vector<int>> build_neighborhoods(std::span<const double> grid, int neighborhood_size) {
    const int r = static_cast<int>(grid.size());
    if (neighborhood_size < 1 || neighborhood_size > r)
        throw std::invalid_argument("build_neighborhoods: neighborhood size outside [1, R]");

    std::vector<std::vector<int>> result(r);
    std::vector<int> order(r);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) order[j] = j;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const double da = std::abs(grid[i] - grid[a]);
            const double db = std::abs(grid[i] - grid[b]);
            if (da != db) return da < db;
            return a < b;
        });
        result[i].assign(order.begin(), order.begin() + neighborhood_size);
        std::sort(result[i].begin(), result[i].end());
    }
    return result;
}

SolutionMatrix canonical_sort(const SolutionMatrix& solution, const Evaluation& evaluation) {
    const std::size_t m = solution.rows.size();
    if (evaluation.invalid_counts.size() != m)
        throw std::invalid_argument("canonical_sort: evaluation does not match the solution");

    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (evaluation.invalid_counts[a] != evaluation.invalid_counts[b])
            return evaluation.invalid_counts[a] < evaluation.invalid_counts[b];
        return solution.rows[a] < solution.rows[b];
    });

    SolutionMatrix sorted;
    sorted.rows.reserve(m);
    for (std::size_t i : order) sorted.rows.push_back(solution.rows[i]);
    return sorted;
}

std::pair<std::vector<int>, std::vector<int>> pmx_with_cuts(std::span<const int> parent1,
                                                            std::span<const int> parent2, int cut_lo, int cut_hi) {
    const int n = static_cast<int>(parent1.size());
    if (static_cast<int>(parent2.size()) != n) throw std::invalid_argument("pmx: parents differ in length");
    if (cut_lo < 0 || cut_hi >= n || cut_lo > cut_hi) throw std::invalid_argument("pmx: bad cut points");

    // seg_pos[v] = position of value v inside the donor segment, or -1.
    const int max_value = n;
    std::vector<int> seg_pos1(max_value + 1, -1), seg_pos2(max_value + 1, -1);
    for (int i = cut_lo; i <= cut_hi; ++i) {
        seg_pos1[parent1[i]] = i;
        seg_pos2[parent2[i]] = i;
    }

    auto make_child = [&](std::span<const int> keeper, std::span<const int> filler, const std::vector<int>& seg_pos,
                          std::span<const int> mapped) {
        std::vector<int> child(n);
        for (int i = cut_lo; i <= cut_hi; ++i) child[i] = keeper[i];
        for (int i = 0; i < n; ++i) {
            if (i >= cut_lo && i <= cut_hi) continue;
            int v = filler[i];
            while (seg_pos[v] != -1) v = mapped[seg_pos[v]];
            child[i] = v;
        }
        return child;
    };

    return {make_child(parent1, parent2, seg_pos1, parent2), make_child(parent2, parent1, seg_pos2, parent1)};
}

std::pair<std::vector<int>, std::vector<int>> pmx(std::span<const int> parent1, std::span<const int> parent2,
                                                  Rng& rng) {
    const int n = static_cast<int>(parent1.size());
    int a = static_cast<int>(rng.below(n));
    int b = static_cast<int>(rng.below(n));
    if (a > b) std::swap(a, b);
    return pmx_with_cuts(parent1, parent2, a, b);
}

SolutionMatrix swap_mutation(const SolutionMatrix& solution, Rng& rng) {
    SolutionMatrix mutated = solution;
    for (auto& row : mutated.rows) {
        const int n = static_cast<int>(row.size());
        if (n < 2) continue;
        const int a = static_cast<int>(rng.below(n));
        int b = static_cast<int>(rng.below(n - 1));
        if (b >= a) ++b;
        std::swap(row[a], row[b]);
    }
    return mutated;
}

namespace {

// C(n, k) capped at `cap`; avoids overflow for large fleets.
long long capped_choose(int n, int k, long long cap) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long result = 1;
    for (int i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
        if (result >= cap) return cap;
    }
    return result;
}

}  // namespace

std::vector<SolutionMatrix> reproduce(const SolutionMatrix& parent_a, const Evaluation& eval_a,
                                      const SolutionMatrix& parent_b, const Evaluation& eval_b,
                                      double crossover_prob, Rng& rng) {
    if (rng.uniform01() >= crossover_prob)
        return {swap_mutation(parent_a, rng), swap_mutation(parent_b, rng)};

    SolutionMatrix a = canonical_sort(parent_a, eval_a);
    SolutionMatrix b = canonical_sort(parent_b, eval_b);
    if (a.robot_count() > b.robot_count()) std::swap(a, b);
    const int ma = a.robot_count();
    const int mb = b.robot_count();

    SolutionMatrix child_a = a;
    SolutionMatrix child_b = b;
    for (int i = 0; i < ma; ++i) {
        auto [ra, rb] = pmx(a.rows[i], b.rows[i], rng);
        child_a.rows[i] = std::move(ra);
        child_b.rows[i] = std::move(rb);
    }
    std::vector<SolutionMatrix> offspring{child_a, child_b};
    if (ma == mb) return offspring;

    // Row-subset children: fleets of size ma sampled from the larger child.
    const long long subsets = capped_choose(mb, ma, 10);
    for (long long c = 0; c < subsets; ++c) {
        std::vector<int> indexes(mb);
        for (int i = 0; i < mb; ++i) indexes[i] = i;
        for (int i = 0; i < ma; ++i) {
            const int j = i + static_cast<int>(rng.below(mb - i));
            std::swap(indexes[i], indexes[j]);
        }
        indexes.resize(ma);
        std::sort(indexes.begin(), indexes.end());  // keep the donor's row order
        SolutionMatrix subset;
        subset.rows.reserve(ma);
        for (int i : indexes) subset.rows.push_back(child_b.rows[i]);
        offspring.push_back(std::move(subset));
    }

    // Verbatim exchange of the first ma rows between the parents.
    SolutionMatrix swap_a = a;
    SolutionMatrix swap_b = b;
    for (int i = 0; i < ma; ++i) std::swap(swap_a.rows[i], swap_b.rows[i]);
    offspring.push_back(std::move(swap_a));
    offspring.push_back(std::move(swap_b));
    return offspring;
}

int match_subproblem(const Evaluation& evaluation, std::span<const Subproblem> subproblems,
                     const RobotBounds& bounds) {
    if (subproblems.empty()) throw std::invalid_argument("match_subproblem: no subproblems");
    const int denom = bounds.ubm - bounds.lbm;
    const double ratio =
        denom == 0 ? 0.0 : static_cast<double>(evaluation.objectives.robot_count - bounds.lbm) / denom;

    int best_satisfied = -1;
    double best_incumbent_f1 = -kInf;
    int least_violated = 0;
    double least_violation = -kInf;
    for (std::size_t i = 0; i < subproblems.size(); ++i) {
        const double cv = std::min(subproblems[i].epsilon - ratio, 0.0);
        if (cv == 0.0) {
            const double f1 = subproblems[i].incumbent_eval.penalty_makespan;
            if (best_satisfied < 0 || f1 > best_incumbent_f1) {
                best_satisfied = static_cast<int>(i);
                best_incumbent_f1 = f1;
            }
        } else if (cv > least_violation) {
            least_violation = cv;
            least_violated = static_cast<int>(i);
        }
    }
    return best_satisfied >= 0 ? best_satisfied : least_violated;
}

bool beats_for_subproblem(const Evaluation& challenger, const Evaluation& incumbent, int budget) {
    const int vc = std::max(0, challenger.objectives.robot_count - budget);
    const int vi = std::max(0, incumbent.objectives.robot_count - budget);
    if (vc != vi) return vc < vi;
    return challenger.penalty_makespan < incumbent.penalty_makespan;
}

void replace_if_better(const SolutionMatrix& solution, const Evaluation& evaluation, int k,
                       std::vector<Subproblem>& subproblems) {
    std::vector<int> targets = subproblems[k].neighborhood;
    targets.push_back(k);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (int j : targets) {
        Subproblem& sp = subproblems[j];
        if (beats_for_subproblem(evaluation, sp.incumbent_eval, sp.robot_budget)) {
            sp.incumbent = solution;
            sp.incumbent_eval = evaluation;
        }
    }
}

bool archive_update(ParetoArchive& archive, const SolutionMatrix& solution, const Evaluation& evaluation) {
    if (!evaluation.feasible) return false;
    const ObjectiveVector& obj = evaluation.objectives;
    for (const ArchiveEntry& entry : archive.entries)
        if (entry.objectives == obj || dominates(entry.objectives, obj)) return false;
    std::erase_if(archive.entries, [&](const ArchiveEntry& entry) { return dominates(obj, entry.objectives); });
    archive.entries.push_back({solution, obj});
    return true;
}

std::vector<int> dra_update_and_select(std::vector<Subproblem>& subproblems, int generation, int dra_interval,
                                       int selected_count, std::vector<double>& reference_makespans, Rng& rng) {
    const int r = static_cast<int>(subproblems.size());
    if (generation > 0 && generation % dra_interval == 0) {
        for (int i = 0; i < r; ++i) {
            const double before = reference_makespans[i];
            const double now = subproblems[i].incumbent_eval.penalty_makespan;
            const double delta = std::max(0.0, (before - now) / before);
            subproblems[i].utility =
                delta > 0.001 ? 1.0 : (0.95 + 0.05 * delta / 0.001) * subproblems[i].utility;
            reference_makespans[i] = now;
        }
    }

    std::vector<int> selected{0, r - 1};  // boundary subproblems always evolve
    std::vector<char> in_set(r, 0);
    in_set[0] = in_set[r - 1] = 1;
    for (int s = 0; s < selected_count; ++s) {
        int best = static_cast<int>(rng.below(r));
        for (int t = 1; t < 10; ++t) {
            const int candidate = static_cast<int>(rng.below(r));
            if (subproblems[candidate].utility > subproblems[best].utility) best = candidate;
        }
        if (!in_set[best]) {
            in_set[best] = 1;
            selected.push_back(best);
        }
    }
    return selected;
}

namespace {

std::vector<std::pair<int, double>> best_by_budget(const ParetoArchive& archive) {
    std::map<int, double> best;
    for (const ArchiveEntry& e : archive.entries) {
        auto [it, inserted] = best.try_emplace(e.objectives.robot_count, e.objectives.makespan);
        if (!inserted && e.objectives.makespan < it->second) it->second = e.objectives.makespan;
    }
    return {best.begin(), best.end()};
}

}  // namespace

ParetoArchive run_hdmoea(const Instance& instance, const EngineConfig& config, std::uint64_t seed,
                         std::vector<GenerationLog>* log, EngineStats* stats) {
    instance.validate();
    config.validate();

    Rng rng(seed);
    const TravelTimeMatrix travel = build_travel_times(instance);
    const RobotBounds bounds = robot_bounds(instance);
    const int r = config.pop_size;

    const std::vector<double> grid = epsilon_grid(r);
    const std::vector<std::vector<int>> neighborhoods = build_neighborhoods(grid, config.resolved_neighborhood());
    std::vector<int> budgets(r);
    for (int i = 0; i < r; ++i) budgets[i] = robot_budget(grid[i], bounds);

    Evaluator evaluate{&instance, &travel};
    std::vector<SolutionMatrix> population =
        hybrid_init(instance, travel, budgets, rng, evaluate, {config.weight_count});

    std::vector<Subproblem> subproblems(r);
    ParetoArchive archive;
    std::vector<double> reference_makespans(r);
    for (int i = 0; i < r; ++i) {
        Subproblem& sp = subproblems[i];
        sp.index = i;
        sp.epsilon = grid[i];
        sp.robot_budget = budgets[i];
        sp.incumbent = std::move(population[i]);
        sp.incumbent_eval = evaluate(sp.incumbent);
        sp.neighborhood = neighborhoods[i];
        reference_makespans[i] = sp.incumbent_eval.penalty_makespan;
        archive_update(archive, sp.incumbent, sp.incumbent_eval);
    }

    std::vector<int> all_indexes(r);
    for (int i = 0; i < r; ++i) all_indexes[i] = i;

    int generation = 0;
    while (evaluate.count < config.nfe_budget) {
        const std::vector<int> selected = dra_update_and_select(subproblems, generation, config.dra_interval,
                                                                config.resolved_selected(), reference_makespans, rng);
        for (int i : selected) {
            if (evaluate.count >= config.nfe_budget) break;

            const std::vector<int>& pool =
                rng.uniform01() < config.mating_pool_prob ? subproblems[i].neighborhood : all_indexes;
            const int pa = pool[rng.below(pool.size())];
            int pb = pool[rng.below(pool.size())];
            if (pool.size() > 1)
                while (pb == pa) pb = pool[rng.below(pool.size())];

            std::vector<SolutionMatrix> offspring =
                reproduce(subproblems[pa].incumbent, subproblems[pa].incumbent_eval, subproblems[pb].incumbent,
                          subproblems[pb].incumbent_eval, config.crossover_prob, rng);

            for (SolutionMatrix& child : offspring) {
                if (evaluate.count >= config.nfe_budget) break;
                Evaluation child_eval = evaluate(child);
                for (int attempt = 0; attempt < config.repair_attempts && !child_eval.feasible; ++attempt) {
                    if (evaluate.count >= config.nfe_budget) break;
                    SolutionMatrix repaired = swap_mutation(child, rng);
                    Evaluation repaired_eval = evaluate(repaired);
                    if (repaired_eval.feasible) {
                        child = std::move(repaired);
                        child_eval = std::move(repaired_eval);
                    }
                }
                const int k = match_subproblem(child_eval, subproblems, bounds);
                replace_if_better(child, child_eval, k, subproblems);
                archive_update(archive, child, child_eval);
            }
        }
        ++generation;
        if (log)
            log->push_back({generation, evaluate.count, static_cast<int>(archive.size()), best_by_budget(archive)});
    }

    if (stats) {
        stats->evaluations = evaluate.count;
        stats->generations = generation;
    }
    return archive;
}

}  // namespace mompda
