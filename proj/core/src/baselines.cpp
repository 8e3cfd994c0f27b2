#include "mompda/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "mompda/construction.hpp"
#include "mompda/metrics.hpp"
#include "mompda/rng.hpp"

namespace mompda {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void BaselineConfig::validate() const {
    if (pop_size < 2) throw std::invalid_argument("BaselineConfig: pop_size must be >= 2");
    if (nfe_budget < 0) throw std::invalid_argument("BaselineConfig: nfe_budget must be non-negative");
    if (crossover_prob < 0.0 || crossover_prob > 1.0)
        throw std::invalid_argument("BaselineConfig: crossover_prob outside [0,1]");
    if (mating_pool_prob < 0.0 || mating_pool_prob > 1.0)
        throw std::invalid_argument("BaselineConfig: mating_pool_prob outside [0,1]");
}

SortResult nondominated_sort(std::span<const ObjectiveVector> objectives, const RobotBounds& bounds) {
    const int n = static_cast<int>(objectives.size());
    SortResult result;
    result.rank.assign(n, 0);
    result.crowding.assign(n, 0.0);

    std::vector<std::vector<int>> dominated_by(n);
    std::vector<int> domination_count(n, 0);
    std::vector<int> current;
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            if (p == q) continue;
            if (dominates(objectives[p], objectives[q]))
                dominated_by[p].push_back(q);
            else if (dominates(objectives[q], objectives[p]))
                ++domination_count[p];
        }
        if (domination_count[p] == 0) {
            result.rank[p] = 0;
            current.push_back(p);
        }
    }
    while (!current.empty()) {
        result.fronts.push_back(current);
        std::vector<int> next;
        for (int p : current) {
            for (int q : dominated_by[p]) {
                if (--domination_count[q] == 0) {
                    result.rank[q] = static_cast<int>(result.fronts.size());
                    next.push_back(q);
                }
            }
        }
        current = std::move(next);
    }

    std::vector<NormalizedPoint> points(n);
    for (int i = 0; i < n; ++i) points[i] = normalize(objectives[i], bounds);
    for (const std::vector<int>& front : result.fronts) {
        const std::size_t fs = front.size();
        if (fs == 1) {
            result.crowding[front[0]] = kInf;
            continue;
        }
        for (int axis = 0; axis < 2; ++axis) {
            auto coord = [&](int idx) { return axis == 0 ? points[idx].ob1 : points[idx].ob2; };
            std::vector<int> order = front;
            std::sort(order.begin(), order.end(), [&](int a, int b) { return coord(a) < coord(b); });
            result.crowding[order.front()] = kInf;
            result.crowding[order.back()] = kInf;
            const double span = coord(order.back()) - coord(order.front());
            if (span <= 0.0) continue;
            for (std::size_t i = 1; i + 1 < fs; ++i)
                result.crowding[order[i]] += (coord(order[i + 1]) - coord(order[i - 1])) / span;
        }
    }
    return result;
}

namespace {

ParetoArchive final_archive(std::span<const SolutionMatrix> population, std::span<const Evaluation> evaluations) {
    ParetoArchive archive;
    for (std::size_t i = 0; i < population.size(); ++i) archive_update(archive, population[i], evaluations[i]);
    return archive;
}

std::vector<std::pair<int, double>> archive_best_by_budget(const ParetoArchive& archive) {
    std::map<int, double> best;
    for (const ArchiveEntry& e : archive.entries) {
        auto [it, inserted] = best.try_emplace(e.objectives.robot_count, e.objectives.makespan);
        if (!inserted && e.objectives.makespan < it->second) it->second = e.objectives.makespan;
    }
    return {best.begin(), best.end()};
}

void append_log(std::vector<GenerationLog>* log, int generation, long long evaluations,
                const ParetoArchive& archive) {
    if (!log) return;
    log->push_back({generation, evaluations, static_cast<int>(archive.size()), archive_best_by_budget(archive)});
}

}  // namespace

ParetoArchive run_nsga2(const Instance& instance, const BaselineConfig& config, std::uint64_t seed,
                        std::vector<GenerationLog>* log) {
    instance.validate();
    config.validate();

    Rng rng(seed);
    const TravelTimeMatrix travel = build_travel_times(instance);
    const RobotBounds bounds = robot_bounds(instance);
    Evaluator evaluate{&instance, &travel};

    std::vector<SolutionMatrix> population;
    std::vector<Evaluation> evaluations;
    for (int i = 0; i < config.pop_size; ++i) {
        population.push_back(random_solution(instance.task_count(), rng.uniform_int(bounds.lbm, bounds.ubm), rng));
        evaluations.push_back(evaluate(population.back()));
    }

    int generation = 0;
    while (evaluate.count < config.nfe_budget) {
        std::vector<ObjectiveVector> objectives(population.size());
        for (std::size_t i = 0; i < population.size(); ++i) objectives[i] = evaluations[i].objectives;
        const SortResult ranking = nondominated_sort(objectives, bounds);

        auto tournament = [&]() {
            const int a = static_cast<int>(rng.below(population.size()));
            const int b = static_cast<int>(rng.below(population.size()));
            if (ranking.rank[a] != ranking.rank[b]) return ranking.rank[a] < ranking.rank[b] ? a : b;
            if (ranking.crowding[a] != ranking.crowding[b]) return ranking.crowding[a] > ranking.crowding[b] ? a : b;
            return a;
        };

        std::vector<SolutionMatrix> offspring;
        std::vector<Evaluation> offspring_evals;
        while (offspring.size() < static_cast<std::size_t>(config.pop_size) &&
               evaluate.count < config.nfe_budget) {
            const int pa = tournament();
            const int pb = tournament();
            std::vector<SolutionMatrix> children = reproduce(population[pa], evaluations[pa], population[pb],
                                                             evaluations[pb], config.crossover_prob, rng);
            for (SolutionMatrix& child : children) {
                if (evaluate.count >= config.nfe_budget) break;
                offspring_evals.push_back(evaluate(child));
                offspring.push_back(std::move(child));
            }
        }

        // Elitist truncation of parents + offspring.
        std::vector<SolutionMatrix> combined = std::move(population);
        std::vector<Evaluation> combined_evals = std::move(evaluations);
        combined.insert(combined.end(), std::make_move_iterator(offspring.begin()),
                        std::make_move_iterator(offspring.end()));
        combined_evals.insert(combined_evals.end(), std::make_move_iterator(offspring_evals.begin()),
                              std::make_move_iterator(offspring_evals.end()));

        std::vector<ObjectiveVector> combined_objectives(combined.size());
        for (std::size_t i = 0; i < combined.size(); ++i) combined_objectives[i] = combined_evals[i].objectives;
        const SortResult combined_ranking = nondominated_sort(combined_objectives, bounds);

        population.clear();
        evaluations.clear();
        for (const std::vector<int>& front : combined_ranking.fronts) {
            if (population.size() >= static_cast<std::size_t>(config.pop_size)) break;
            std::vector<int> order = front;
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                if (combined_ranking.crowding[a] != combined_ranking.crowding[b])
                    return combined_ranking.crowding[a] > combined_ranking.crowding[b];
                return a < b;
            });
            for (int idx : order) {
                if (population.size() >= static_cast<std::size_t>(config.pop_size)) break;
                population.push_back(std::move(combined[idx]));
                evaluations.push_back(std::move(combined_evals[idx]));
            }
        }
        ++generation;
        if (log) append_log(log, generation, evaluate.count, final_archive(population, evaluations));
    }
    return final_archive(population, evaluations);
}

ParetoArchive run_moead(const Instance& instance, const BaselineConfig& config, std::uint64_t seed,
                        std::vector<GenerationLog>* log) {
    instance.validate();
    config.validate();

    Rng rng(seed);
    const TravelTimeMatrix travel = build_travel_times(instance);
    const RobotBounds bounds = robot_bounds(instance);
    Evaluator evaluate{&instance, &travel};
    const int r = config.pop_size;

    // Uniform weights (w, 1-w); the neighborhood structure is the same as for
    // an evenly spaced scalar grid.
    const std::vector<double> grid = epsilon_grid(r);
    const int t = std::clamp(config.neighborhood_size > 0 ? config.neighborhood_size : r / 10, 1, r);
    const std::vector<std::vector<int>> neighborhoods = build_neighborhoods(grid, t);

    std::vector<SolutionMatrix> population;
    std::vector<Evaluation> evaluations;
    std::vector<NormalizedPoint> points;
    NormalizedPoint ideal{kInf, kInf};
    ParetoArchive archive;
    for (int i = 0; i < r; ++i) {
        population.push_back(random_solution(instance.task_count(), rng.uniform_int(bounds.lbm, bounds.ubm), rng));
        evaluations.push_back(evaluate(population.back()));
        points.push_back(normalize(evaluations.back().objectives, bounds));
        ideal.ob1 = std::min(ideal.ob1, points.back().ob1);
        ideal.ob2 = std::min(ideal.ob2, points.back().ob2);
        archive_update(archive, population.back(), evaluations.back());
    }

    auto tchebycheff = [&](const NormalizedPoint& p, int subproblem) {
        const double w = grid[subproblem];
        return std::max(w * std::abs(p.ob1 - ideal.ob1), (1.0 - w) * std::abs(p.ob2 - ideal.ob2));
    };

    std::vector<int> all_indexes(r);
    for (int i = 0; i < r; ++i) all_indexes[i] = i;

    std::vector<double> utility(r, 1.0);
    std::vector<double> reference_g(r);
    for (int i = 0; i < r; ++i) reference_g[i] = tchebycheff(points[i], i);
    const int selected_count = std::max(1, config.selected_count > 0 ? config.selected_count : r / 5 - 2);

    int generation = 0;
    while (evaluate.count < config.nfe_budget) {
        std::vector<int> selected;
        if (config.dra) {
            if (generation > 0 && generation % config.dra_interval == 0) {
                for (int i = 0; i < r; ++i) {
                    const double now = tchebycheff(points[i], i);
                    const double before = reference_g[i];
                    const double delta = before > 0.0 ? std::max(0.0, (before - now) / before) : 0.0;
                    utility[i] = delta > 0.001 ? 1.0 : (0.95 + 0.05 * delta / 0.001) * utility[i];
                    reference_g[i] = now;
                }
            }
            selected = {0, r - 1};
            std::vector<char> in_set(r, 0);
            in_set[0] = in_set[r - 1] = 1;
            for (int s = 0; s < selected_count; ++s) {
                int best = static_cast<int>(rng.below(r));
                for (int k = 1; k < 10; ++k) {
                    const int candidate = static_cast<int>(rng.below(r));
                    if (utility[candidate] > utility[best]) best = candidate;
                }
                if (!in_set[best]) {
                    in_set[best] = 1;
                    selected.push_back(best);
                }
            }
        } else {
            selected = all_indexes;
        }

        for (int i : selected) {
            if (evaluate.count >= config.nfe_budget) break;
            const std::vector<int>& pool =
                rng.uniform01() < config.mating_pool_prob ? neighborhoods[i] : all_indexes;
            const int pa = pool[rng.below(pool.size())];
            int pb = pool[rng.below(pool.size())];
            if (pool.size() > 1)
                while (pb == pa) pb = pool[rng.below(pool.size())];

            std::vector<SolutionMatrix> children = reproduce(population[pa], evaluations[pa], population[pb],
                                                             evaluations[pb], config.crossover_prob, rng);
            for (SolutionMatrix& child : children) {
                if (evaluate.count >= config.nfe_budget) break;
                Evaluation child_eval = evaluate(child);
                const NormalizedPoint child_point = normalize(child_eval.objectives, bounds);
                ideal.ob1 = std::min(ideal.ob1, child_point.ob1);
                ideal.ob2 = std::min(ideal.ob2, child_point.ob2);
                for (int j : pool) {
                    if (tchebycheff(child_point, j) <= tchebycheff(points[j], j)) {
                        population[j] = child;
                        evaluations[j] = child_eval;
                        points[j] = child_point;
                    }
                }
                archive_update(archive, child, child_eval);
            }
        }
        ++generation;
        append_log(log, generation, evaluate.count, archive);
    }
    return archive;
}

ParetoArchive run_random_search(const Instance& instance, const BaselineConfig& config, std::uint64_t seed,
                                std::vector<GenerationLog>* log) {
    instance.validate();
    config.validate();

    Rng rng(seed);
    const TravelTimeMatrix travel = build_travel_times(instance);
    const RobotBounds bounds = robot_bounds(instance);
    Evaluator evaluate{&instance, &travel};

    ParetoArchive archive;
    while (evaluate.count < config.nfe_budget) {
        const SolutionMatrix solution =
            random_solution(instance.task_count(), rng.uniform_int(bounds.lbm, bounds.ubm), rng);
        const Evaluation evaluation = evaluate(solution);
        archive_update(archive, solution, evaluation);
        if (evaluate.count % config.pop_size == 0)
            append_log(log, static_cast<int>(evaluate.count / config.pop_size), evaluate.count, archive);
    }
    return archive;
}

}  // namespace mompda
