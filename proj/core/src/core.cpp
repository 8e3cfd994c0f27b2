#include "mompda/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mompda {

double euclidean(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

namespace {

bool in_unit_square(const Point& p) {
    return p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0;
}

}  // namespace

void Instance::validate() const {
    const std::size_t n = task_positions.size();
    if (n == 0) throw std::invalid_argument("instance '" + name + "': needs at least one task");
    if (initial_demands.size() != n)
        throw std::invalid_argument("instance '" + name + "': initial_demands size mismatch");
    if (increment_rates.size() != n)
        throw std::invalid_argument("instance '" + name + "': increment_rates size mismatch");
    if (!(robot_ability > 0.0)) throw std::invalid_argument("instance '" + name + "': robot_ability must be > 0");
    if (!(robot_speed > 0.0)) throw std::invalid_argument("instance '" + name + "': robot_speed must be > 0");
    if (!in_unit_square(depot)) throw std::invalid_argument("instance '" + name + "': depot outside [0,1]^2");
    for (std::size_t j = 0; j < n; ++j) {
        if (!in_unit_square(task_positions[j]))
            throw std::invalid_argument("instance '" + name + "': task " + std::to_string(j + 1) +
                                        " position outside [0,1]^2");
        if (initial_demands[j] < 0.0)
            throw std::invalid_argument("instance '" + name + "': task " + std::to_string(j + 1) +
                                        " has negative initial demand");
        if (increment_rates[j] < 0.0)
            throw std::invalid_argument("instance '" + name + "': task " + std::to_string(j + 1) +
                                        " has negative increment rate");
    }
}

TravelTimeMatrix build_travel_times(const Instance& instance) {
    const int n = instance.task_count();
    TravelTimeMatrix times(n + 1);
    auto position = [&](int node) { return node == 0 ? instance.depot : instance.task_positions[node - 1]; };
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            times.set(i, j, euclidean(position(i), position(j)) / instance.robot_speed);
    return times;
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.makespan > b.makespan || a.robot_count > b.robot_count) return false;
    return a.makespan < b.makespan || a.robot_count < b.robot_count;
}

RobotBounds robot_bounds(const Instance& instance) {
    const double beta = instance.robot_ability;
    double max_rate = 0.0;
    long long total = 0;
    for (double alpha : instance.increment_rates) {
        max_rate = std::max(max_rate, alpha);
        total += static_cast<long long>(std::ceil(alpha / beta));
    }
    RobotBounds b;
    b.lbm = std::max(1, static_cast<int>(std::ceil(max_rate / beta)));
    b.ubm = static_cast<int>(total) + 1;
    if (b.ubm < b.lbm) b.ubm = b.lbm;
    return b;
}

}  // namespace mompda
