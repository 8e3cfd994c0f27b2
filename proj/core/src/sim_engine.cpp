#include "sim_engine.hpp"

#include <algorithm>

namespace mompda::detail {

SimEngine::SimEngine(const Instance& instance, const TravelTimeMatrix& travel, int robot_count)
    : travel_(&travel), beta_(instance.robot_ability) {
    const int n = instance.task_count();
    tasks_.resize(n);
    for (int j = 0; j < n; ++j) {
        tasks_[j].q0 = instance.initial_demands[j];
        tasks_[j].alpha = instance.increment_rates[j];
    }
    robots_.resize(robot_count);
    executed_.resize(robot_count);
}

void SimEngine::run(const Chooser& chooser, std::vector<TraceEvent>* trace) {
    for (int k = 0; k < robot_count(); ++k) decide(k, 0.0, chooser, trace);

    while (!queue_.empty()) {
        const Event e = queue_.top();
        queue_.pop();
        if (e.kind == 0)
            handle_completion(e, chooser, trace);
        else
            handle_arrival(e, chooser, trace);
    }
    // Queue drained with tasks left over means the committed fleet can never
    // finish; the caller turns that into a penalty.
}

void SimEngine::decide(int robot, double now, const Chooser& chooser, std::vector<TraceEvent>* trace) {
    const std::optional<int> next = chooser(*this, robot, now);
    if (!next) {
        robots_[robot].state = EngineRobot::State::Retired;
        return;
    }
    commit(robot, *next, now, trace);
}

void SimEngine::commit(int robot, int task_id, double now, std::vector<TraceEvent>* trace) {
    EngineTask& task = tasks_[task_id - 1];
    EngineRobot& rob = robots_[robot];

    const double at = now + travel_time(rob.location, task_id);
    task.arrivals.insert(std::upper_bound(task.arrivals.begin(), task.arrivals.end(), at), at);
    task.projected = complete_time(task.q0, task.alpha, beta_, task.arrivals).value_or(kInf);
    ++task.revision;
    if (task.projected < kInf) queue_.push({task.projected, 0, task_id, task.revision});

    rob.state = EngineRobot::State::Traveling;
    rob.target = task_id;
    rob.arrival = at;
    queue_.push({at, 1, robot, 0});
    if (trace) trace->push_back({robot, TraceEvent::Kind::Depart, task_id, now});
}

void SimEngine::handle_arrival(const Event& e, const Chooser& chooser, std::vector<TraceEvent>* trace) {
    const int robot = e.id;
    EngineRobot& rob = robots_[robot];
    rob.location = rob.target;
    if (trace) trace->push_back({robot, TraceEvent::Kind::Arrive, rob.target, e.time});

    EngineTask& task = tasks_[rob.target - 1];
    if (task.completed) {
        // Finished while this robot was en route; pick the next entry.
        decide(robot, e.time, chooser, trace);
        return;
    }
    rob.state = EngineRobot::State::Executing;
    task.executors.push_back(robot);
}

void SimEngine::handle_completion(const Event& e, const Chooser& chooser, std::vector<TraceEvent>* trace) {
    EngineTask& task = tasks_[e.id - 1];
    if (task.completed || e.revision != task.revision) return;  // superseded projection

    task.completed = true;
    task.completion = e.time;
    ++completed_count_;

    std::vector<int> released = task.executors;
    std::sort(released.begin(), released.end());
    for (int robot : released) {
        ++robots_[robot].executed;
        executed_[robot].emplace_back(e.id, robots_[robot].arrival);
        if (trace) trace->push_back({robot, TraceEvent::Kind::Complete, e.id, e.time});
    }
    task.executors.clear();
    for (int robot : released) decide(robot, e.time, chooser, trace);
}

}  // namespace mompda::detail
