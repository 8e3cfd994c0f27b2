#include "mompda/simulator.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "sim_engine.hpp"

namespace mompda {

bool is_valid_solution(const SolutionMatrix& solution, int n_tasks) {
    if (solution.rows.empty()) return false;
    std::vector<char> seen(static_cast<std::size_t>(n_tasks) + 1);
    for (const auto& row : solution.rows) {
        if (static_cast<int>(row.size()) != n_tasks) return false;
        std::fill(seen.begin(), seen.end(), 0);
        for (int task : row) {
            if (task < 1 || task > n_tasks || seen[task]) return false;
            seen[task] = 1;
        }
    }
    return true;
}

void require_valid(const SolutionMatrix& solution, int n_tasks) {
    if (solution.rows.empty()) throw std::invalid_argument("solution has no rows");
    for (std::size_t k = 0; k < solution.rows.size(); ++k) {
        SolutionMatrix single{{solution.rows[k]}};
        if (!is_valid_solution(single, n_tasks))
            throw std::invalid_argument("row " + std::to_string(k) + " is not a permutation of 1.." +
                                        std::to_string(n_tasks));
    }
}

DemandProfile demand_profile(double alpha, double beta, std::span<const double> arrivals) {
    DemandProfile profile;
    profile.segment_starts.reserve(arrivals.size() + 1);
    profile.rates.reserve(arrivals.size() + 1);
    profile.segment_starts.push_back(0.0);
    profile.rates.push_back(alpha);
    for (std::size_t i = 0; i < arrivals.size(); ++i) {
        profile.segment_starts.push_back(arrivals[i]);
        profile.rates.push_back(alpha - static_cast<double>(i + 1) * beta);
    }
    return profile;
}

std::optional<double> complete_time(double q0, double alpha, double beta, std::span<const double> arrivals) {
    if (arrivals.empty()) throw std::invalid_argument("complete_time: arrivals must be non-empty");
    if (alpha >= static_cast<double>(arrivals.size()) * beta) return std::nullopt;

    // Walk the piecewise-linear demand segment by segment. The rate only ever
    // drops, so the first segment that drives q to zero gives the answer.
    double q = q0;
    double prev = 0.0;
    const std::size_t count = arrivals.size();
    for (std::size_t i = 0; i <= count; ++i) {
        const double rate = alpha - static_cast<double>(i) * beta;
        const double end = i < count ? arrivals[i] : std::numeric_limits<double>::infinity();
        if (rate < 0.0) {
            const double zero = prev + q / (-rate);
            if (zero <= end) return zero;
        }
        q += rate * (end - prev);
        prev = end;
    }
    return std::nullopt;  // unreachable: final rate is negative by the guard above
}

Evaluation decode(const Instance& instance, const TravelTimeMatrix& travel, const SolutionMatrix& solution,
                  std::vector<TraceEvent>* trace) {
    const int n = instance.task_count();
    require_valid(solution, n);
    const int m = solution.robot_count();

    detail::SimEngine engine(instance, travel, m);
    std::vector<std::size_t> cursor(m, 0);

    auto chooser = [&](detail::SimEngine& eng, int robot, double now) -> std::optional<int> {
        const auto& row = solution.rows[robot];
        while (cursor[robot] < row.size()) {
            const int task = row[cursor[robot]];
            ++cursor[robot];
            if (eng.task_completed(task)) continue;
            const double at = now + eng.travel_time(eng.robot_location(robot), task);
            if (eng.task_projected_completion(task) <= at) continue;  // done before we could get there
            return task;
        }
        return std::nullopt;
    };
    engine.run(chooser, trace);

    Evaluation eval;
    eval.completion_times.resize(n);
    for (int j = 1; j <= n; ++j) eval.completion_times[j - 1] = engine.completion_of(j);
    eval.arrival_events = engine.executed_arrivals();
    eval.invalid_counts.resize(m);
    for (int k = 0; k < m; ++k) eval.invalid_counts[k] = n - engine.robots()[k].executed;

    eval.feasible = engine.all_completed();
    eval.objectives.robot_count = m;
    if (eval.feasible) {
        eval.objectives.makespan = *std::max_element(eval.completion_times.begin(), eval.completion_times.end());
        eval.penalty_makespan = eval.objectives.makespan;
    } else {
        eval.penalty_makespan = kPenaltyBase + kPenaltyPerUnfinishedTask * engine.unfinished_count();
        eval.objectives.makespan = eval.penalty_makespan;
    }
    return eval;
}

void write_trace_csv(const std::string& path, std::span<const TraceEvent> trace) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open trace file for writing: " + path);
    out << "robot,event_type,task,time\n";
    char buf[64];
    for (const TraceEvent& e : trace) {
        const char* kind = e.kind == TraceEvent::Kind::Depart   ? "depart"
                           : e.kind == TraceEvent::Kind::Arrive ? "arrive"
                                                                : "complete";
        std::snprintf(buf, sizeof buf, "%.17g", e.time);
        out << e.robot << ',' << kind << ',' << e.task << ',' << buf << '\n';
    }
}

}  // namespace mompda
