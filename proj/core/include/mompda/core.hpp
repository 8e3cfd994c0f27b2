#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mompda {

struct Point {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point&) const = default;
};

double euclidean(const Point& a, const Point& b);

// One MO-MPDA scenario: tasks with linearly growing demands, a depot, and a
// homogeneous robot fleet. Immutable after construction; safe to share
// between concurrent solver runs.
struct Instance {
    std::string name;
    Point depot;
    std::vector<Point> task_positions;    // inside [0,1]^2
    std::vector<double> initial_demands;  // q_j(0), demand units
    std::vector<double> increment_rates;  // alpha_j, demand units per time unit
    double robot_ability = 0.0;           // beta, demand units per time unit
    double robot_speed = 1.0;             // distance units per time unit
    std::uint64_t seed = 0;               // generator seed, 0 for hand-written files

    int task_count() const { return static_cast<int>(task_positions.size()); }

    // Throws std::invalid_argument with the offending field on any violation.
    void validate() const;

    bool operator==(const Instance&) const = default;
};

// Symmetric travel times between the depot (node 0) and tasks (nodes 1..N).
class TravelTimeMatrix {
public:
    TravelTimeMatrix() = default;
    explicit TravelTimeMatrix(int nodes) : nodes_(nodes), times_(static_cast<std::size_t>(nodes) * nodes, 0.0) {}

    int nodes() const { return nodes_; }
    double operator()(int i, int j) const { return times_[static_cast<std::size_t>(i) * nodes_ + j]; }

    void set(int i, int j, double t) {
        times_[static_cast<std::size_t>(i) * nodes_ + j] = t;
        times_[static_cast<std::size_t>(j) * nodes_ + i] = t;
    }

    bool operator==(const TravelTimeMatrix&) const = default;

private:
    int nodes_ = 0;
    std::vector<double> times_;
};

// times[i][j] = euclidean distance / robot_speed.
TravelTimeMatrix build_travel_times(const Instance& instance);

struct ObjectiveVector {
    double makespan = 0.0;  // f1; penalised value for infeasible evaluations
    int robot_count = 0;    // f2

    bool operator==(const ObjectiveVector&) const = default;
};

// Pareto dominance for the two minimisation objectives.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

struct RobotBounds {
    int lbm = 1;  // smallest fleet that can complete every task on its own
    int ubm = 1;  // fleet size beyond which extra robots are provably redundant

    bool operator==(const RobotBounds&) const = default;
};

// lbm = ceil(max_j alpha_j / beta), ubm = sum_j ceil(alpha_j / beta) + 1.
RobotBounds robot_bounds(const Instance& instance);

}  // namespace mompda
