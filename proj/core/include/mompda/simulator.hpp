#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mompda/core.hpp"
#include "mompda/solution.hpp"

namespace mompda {

// Piecewise-linear demand of one task under a committed set of robot
// arrivals: rate alpha before the first arrival, dropping by beta at each
// arrival. segment_starts[i] is where rates[i] begins (segment_starts[0] is
// always 0).
struct DemandProfile {
    std::vector<double> segment_starts;
    std::vector<double> rates;
};

DemandProfile demand_profile(double alpha, double beta, std::span<const double> arrivals);

// First time the demand q(t) = q0 + alpha*t - beta * sum_k max(0, t - arrival_k)
// reaches zero, or nullopt when alpha >= |arrivals| * beta and the demand can
// never be driven down. Arrivals must be sorted ascending and non-empty.
std::optional<double> complete_time(double q0, double alpha, double beta, std::span<const double> arrivals);

inline constexpr double kPenaltyBase = 1e9;
inline constexpr double kPenaltyPerUnfinishedTask = 1e6;

struct TraceEvent {
    enum class Kind { Depart, Arrive, Complete };
    int robot = 0;
    Kind kind = Kind::Depart;
    int task = 0;
    double time = 0.0;
};

struct Evaluation {
    ObjectiveVector objectives;
    // Completion time of task j at index j-1; +inf for tasks left unfinished.
    std::vector<double> completion_times;
    // Per robot: the (task, arrival time) pairs the robot actually executed,
    // i.e. it was on site before the task finished.
    std::vector<std::vector<std::pair<int, double>>> arrival_events;
    // ie_k: tasks in robot k's row it never executed.
    std::vector<int> invalid_counts;
    bool feasible = true;
    // Equal to objectives.makespan when feasible, the penalty value otherwise.
    double penalty_makespan = 0.0;

    bool operator==(const Evaluation&) const = default;
};

// Event-triggered decoding of a solution matrix.
//
// All robots start active at the depot at t=0 and scan their row in order. An
// active robot skips entries whose task is already completed or is committed
// to finish no later than the robot could arrive; it then departs for the
// first remaining entry. Arriving at an uncompleted task commits the robot
// there until completion. Completion times are the zero crossings of the
// committed demand profiles and are revised whenever another robot commits to
// the same task. Simultaneous events resolve completions first (by task
// index), then arrivals by robot index; simultaneous decisions are taken in
// robot-index order, each seeing the commitments of the previous one.
//
// When no event is pending and tasks remain, the plan is infeasible and gets
// penalty_makespan = 1e9 + 1e6 * (unfinished tasks).
//
// Throws std::invalid_argument if a row is not a permutation of 1..N.
Evaluation decode(const Instance& instance, const TravelTimeMatrix& travel, const SolutionMatrix& solution,
                  std::vector<TraceEvent>* trace = nullptr);

void write_trace_csv(const std::string& path, std::span<const TraceEvent> trace);

// Decode wrapper that counts fitness evaluations.
struct Evaluator {
    const Instance* instance = nullptr;
    const TravelTimeMatrix* travel = nullptr;
    long long count = 0;

    Evaluation operator()(const SolutionMatrix& solution) {
        ++count;
        return decode(*instance, *travel, solution);
    }
};

}  // namespace mompda
