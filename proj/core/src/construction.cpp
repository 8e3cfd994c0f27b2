#include "mompda/construction.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "sim_engine.hpp"

namespace mompda {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::vector<double> heuristic_weights(int count) {
    if (count < 2) throw std::invalid_argument("heuristic_weights: need at least two weights");
    std::vector<double> w(count);
    for (int i = 0; i < count; ++i) w[i] = static_cast<double>(i) / (count - 1);
    return w;
}

SolutionMatrix random_solution(int n_tasks, int robots, Rng& rng) {
    SolutionMatrix solution;
    solution.rows.reserve(robots);
    for (int k = 0; k < robots; ++k) solution.rows.push_back(rng.permutation(n_tasks));
    return solution;
}

TimePrediction predict_times(const PredictionState& state, int robot, int task) {
    const PredictionState::Robot& rob = state.robots[robot];
    const PredictionState::Task& t = state.tasks[task - 1];

    TimePrediction p;
    p.arrival = rob.available_time + (*state.travel)(rob.location, task);
    std::vector<double> arrivals = t.arrivals;
    arrivals.insert(std::upper_bound(arrivals.begin(), arrivals.end(), p.arrival), p.arrival);
    p.completion = complete_time(t.q0, t.alpha, state.beta, arrivals).value_or(kInf);
    return p;
}

double committed_rate(const PredictionState& state, int task, double t) {
    const PredictionState::Task& task_state = state.tasks[task - 1];
    std::size_t on_site = 0;
    while (on_site < task_state.arrivals.size() && task_state.arrivals[on_site] <= t) ++on_site;
    return task_state.alpha - static_cast<double>(on_site) * state.beta;
}

namespace {

PredictionState snapshot(const detail::SimEngine& engine, double now) {
    PredictionState state;
    state.beta = engine.beta();
    state.travel = engine.travel_matrix();
    state.tasks.resize(engine.task_count());
    for (int j = 1; j <= engine.task_count(); ++j) {
        const detail::EngineTask& t = engine.task(j);
        auto& out = state.tasks[j - 1];
        out.q0 = t.q0;
        out.alpha = t.alpha;
        out.completed = t.completed;
        out.arrivals = t.arrivals;
    }
    state.robots.resize(engine.robot_count());
    for (int k = 0; k < engine.robot_count(); ++k) {
        state.robots[k].location = engine.robot_location(k);
        state.robots[k].available_time = now;
    }
    return state;
}

}  // namespace

SolutionMatrix heuristic_candidate(const Instance& instance, const TravelTimeMatrix& travel, int robots,
                                   double omega, bool ct_ascending) {
    const int n = instance.task_count();
    detail::SimEngine engine(instance, travel, robots);

    SolutionMatrix partial;
    partial.rows.resize(robots);
    std::vector<std::vector<char>> visited(robots, std::vector<char>(n + 1, 0));

    struct Candidate {
        int task;
        double arrival;
        double completion;
    };

    auto chooser = [&](detail::SimEngine& eng, int robot, double now) -> std::optional<int> {
        PredictionState state;
        bool has_state = false;
        std::vector<Candidate> candidates;
        for (int j = 1; j <= n; ++j) {
            if (eng.task_completed(j) || visited[robot][j]) continue;
            const double at = now + eng.travel_time(eng.robot_location(robot), j);
            if (eng.task_projected_completion(j) <= at) continue;  // same skip rule as the decoder
            if (!has_state) {
                state = snapshot(eng, now);
                has_state = true;
            }
            const TimePrediction p = predict_times(state, robot, j);
            candidates.push_back({j, p.arrival, p.completion});
        }
        if (candidates.empty()) return std::nullopt;

        // Rank candidates on arrival time (ascending) and completion time
        // (direction per the sort rule); the priority is the weighted rank
        // sum and the smallest wins. Infinite completions sit at the tail of
        // the ascending order and at the head of the descending one.
        const std::size_t c = candidates.size();
        std::vector<std::size_t> by_at(c), by_ct(c);
        for (std::size_t i = 0; i < c; ++i) by_at[i] = by_ct[i] = i;
        std::sort(by_at.begin(), by_at.end(), [&](std::size_t a, std::size_t b) {
            if (candidates[a].arrival != candidates[b].arrival) return candidates[a].arrival < candidates[b].arrival;
            return candidates[a].task < candidates[b].task;
        });
        std::sort(by_ct.begin(), by_ct.end(), [&](std::size_t a, std::size_t b) {
            if (candidates[a].completion != candidates[b].completion)
                return ct_ascending ? candidates[a].completion < candidates[b].completion
                                    : candidates[a].completion > candidates[b].completion;
            return candidates[a].task < candidates[b].task;
        });

        std::vector<double> priority(c);
        for (std::size_t r = 0; r < c; ++r) priority[by_at[r]] += omega * static_cast<double>(r + 1);
        for (std::size_t r = 0; r < c; ++r) priority[by_ct[r]] += (1.0 - omega) * static_cast<double>(r + 1);

        std::size_t best = 0;
        for (std::size_t i = 1; i < c; ++i) {
            if (priority[i] < priority[best] ||
                (priority[i] == priority[best] && candidates[i].task < candidates[best].task))
                best = i;
        }
        const int chosen = candidates[best].task;
        visited[robot][chosen] = 1;
        partial.rows[robot].push_back(chosen);
        return chosen;
    };

    engine.run(chooser);
    return partial;
}

void complement_rows(SolutionMatrix& solution, int n_tasks, Rng& rng) {
    for (auto& row : solution.rows) {
        std::vector<char> present(n_tasks + 1, 0);
        for (int task : row) present[task] = 1;
        std::vector<int> rest;
        for (int j = 1; j <= n_tasks; ++j)
            if (!present[j]) rest.push_back(j);
        rng.shuffle(rest);
        row.insert(row.end(), rest.begin(), rest.end());
    }
}

SolutionMatrix heuristic_solution(const Instance& instance, const TravelTimeMatrix& travel, int robots, Rng& rng,
                                  Evaluator& evaluator, const HeuristicConfig& config) {
    if (robots < 1) throw std::invalid_argument("heuristic_solution: need at least one robot");
    const std::vector<double> weights = heuristic_weights(config.weight_count);

    SolutionMatrix best;
    double best_makespan = kInf;
    for (int rb = 0; rb <= 1; ++rb) {
        for (double omega : weights) {
            SolutionMatrix candidate = heuristic_candidate(instance, travel, robots, omega, rb == 1);
            complement_rows(candidate, instance.task_count(), rng);
            const Evaluation eval = evaluator(candidate);
            if (eval.penalty_makespan < best_makespan) {
                best_makespan = eval.penalty_makespan;
                best = std::move(candidate);
            }
        }
    }
    return best;
}

std::vector<SolutionMatrix> hybrid_init(const Instance& instance, const TravelTimeMatrix& travel,
                                        std::span<const int> budgets, Rng& rng, Evaluator& evaluator,
                                        const HeuristicConfig& config) {
    std::vector<SolutionMatrix> population;
    population.reserve(budgets.size());
    std::vector<char> seen;
    for (int m : budgets) {
        if (m < 1) throw std::invalid_argument("hybrid_init: robot budget must be positive");
        if (static_cast<std::size_t>(m) >= seen.size()) seen.resize(m + 1, 0);
        if (seen[m]) {
            population.push_back(random_solution(instance.task_count(), m, rng));
        } else {
            seen[m] = 1;
            population.push_back(heuristic_solution(instance, travel, m, rng, evaluator, config));
        }
    }
    return population;
}

}  // namespace mompda
