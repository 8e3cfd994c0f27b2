#pragma once

#include <span>
#include <vector>

#include "mompda/core.hpp"
#include "mompda/rng.hpp"
#include "mompda/simulator.hpp"
#include "mompda/solution.hpp"

namespace mompda {

struct HeuristicConfig {
    int weight_count = 11;  // |W|; weights evenly spaced over [0,1]
};

// {0, 1/(count-1), ..., 1}.
std::vector<double> heuristic_weights(int count);

// m independent uniform permutations of 1..N.
SolutionMatrix random_solution(int n_tasks, int robots, Rng& rng);

// Snapshot of a partially built schedule, as seen by a robot that has to pick
// its next task: per-task demand parameters and committed arrivals, per-robot
// whereabouts.
struct PredictionState {
    struct Task {
        double q0 = 0.0;
        double alpha = 0.0;
        bool completed = false;
        std::vector<double> arrivals;  // committed, sorted
    };
    struct Robot {
        int location = 0;
        double available_time = 0.0;
    };

    double beta = 0.0;
    const TravelTimeMatrix* travel = nullptr;
    std::vector<Task> tasks;  // index j-1
    std::vector<Robot> robots;
};

struct TimePrediction {
    double arrival = 0.0;
    double completion = 0.0;  // +inf when the task still could not finish
};

// Arrival time if `robot` headed for `task` now, and the completion time the
// task would then have (committed executors plus this robot).
TimePrediction predict_times(const PredictionState& state, int robot, int task);

// Committed net demand rate of a task at time t (its lambda).
double committed_rate(const PredictionState& state, int task, double t);

// One deterministic constructive build for a fixed rank weight and completion
// sort direction. Rows only contain the tasks each robot actually committed
// to; complement_rows restores full permutations.
SolutionMatrix heuristic_candidate(const Instance& instance, const TravelTimeMatrix& travel, int robots,
                                   double omega, bool ct_ascending);

// Appends each robot's unvisited tasks, shuffled, to the end of its row.
void complement_rows(SolutionMatrix& solution, int n_tasks, Rng& rng);

// Best of the 2|W| candidate builds by decoded makespan (penalised value for
// infeasible builds), complemented to full permutations. Candidate decodes go
// through `evaluator` and count as fitness evaluations.
SolutionMatrix heuristic_solution(const Instance& instance, const TravelTimeMatrix& travel, int robots, Rng& rng,
                                  Evaluator& evaluator, const HeuristicConfig& config = {});

// One solution per requested budget: heuristic the first time a fleet size
// appears, random afterwards.
std::vector<SolutionMatrix> hybrid_init(const Instance& instance, const TravelTimeMatrix& travel,
                                        std::span<const int> budgets, Rng& rng, Evaluator& evaluator,
                                        const HeuristicConfig& config = {});

}  // namespace mompda
