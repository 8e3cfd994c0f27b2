#pragma once

#include <vector>

namespace mompda {

// Routing plan for a fleet: one row per robot, each row a permutation of all
// task indexes 1..N giving the intended visiting order. The number of rows is
// the robot-count objective; rows may contain entries the robot never
// executes (skipped during decoding).
struct SolutionMatrix {
    std::vector<std::vector<int>> rows;

    int robot_count() const { return static_cast<int>(rows.size()); }
    int task_count() const { return rows.empty() ? 0 : static_cast<int>(rows.front().size()); }

    bool operator==(const SolutionMatrix&) const = default;
};

bool is_valid_solution(const SolutionMatrix& solution, int n_tasks);

// Throws std::invalid_argument naming the broken row.
void require_valid(const SolutionMatrix& solution, int n_tasks);

}  // namespace mompda
