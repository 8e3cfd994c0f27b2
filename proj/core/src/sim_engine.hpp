#pragma once

// Internal event engine shared by the decoder and the constructive heuristic.
// Not installed; everything here is an implementation detail of core.

#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "mompda/core.hpp"
#include "mompda/simulator.hpp"

namespace mompda::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct EngineTask {
    double q0 = 0.0;
    double alpha = 0.0;
    std::vector<double> arrivals;  // committed arrival times, sorted
    double projected = kInf;       // zero crossing under current commitments
    long revision = 0;
    bool completed = false;
    double completion = kInf;
    std::vector<int> executors;  // robots physically on site
};

struct EngineRobot {
    enum class State { Deciding, Traveling, Executing, Retired };
    State state = State::Deciding;
    int location = 0;  // node id, 0 = depot
    int target = 0;    // task id while traveling or executing
    double arrival = 0.0;
    int executed = 0;
};

class SimEngine {
public:
    // Called whenever a robot is free to choose its next task. Returns the
    // task id to commit to (must be uncompleted) or nullopt to retire the
    // robot for good.
    using Chooser = std::function<std::optional<int>(SimEngine&, int robot, double now)>;

    SimEngine(const Instance& instance, const TravelTimeMatrix& travel, int robot_count);

    void run(const Chooser& chooser, std::vector<TraceEvent>* trace = nullptr);

    int task_count() const { return static_cast<int>(tasks_.size()); }
    int robot_count() const { return static_cast<int>(robots_.size()); }
    double beta() const { return beta_; }

    const EngineTask& task(int id) const { return tasks_[id - 1]; }
    bool task_completed(int id) const { return tasks_[id - 1].completed; }
    double task_projected_completion(int id) const { return tasks_[id - 1].projected; }
    double travel_time(int from_node, int to_node) const { return (*travel_)(from_node, to_node); }
    const TravelTimeMatrix* travel_matrix() const { return travel_; }
    int robot_location(int robot) const { return robots_[robot].location; }
    const std::vector<EngineRobot>& robots() const { return robots_; }

    bool all_completed() const { return completed_count_ == task_count(); }
    int unfinished_count() const { return task_count() - completed_count_; }
    double completion_of(int id) const { return tasks_[id - 1].completion; }
    const std::vector<std::vector<std::pair<int, double>>>& executed_arrivals() const { return executed_; }

private:
    struct Event {
        double time;
        int kind;  // 0 = completion (id = task), 1 = arrival (id = robot)
        int id;
        long revision;  // completions only

        bool operator>(const Event& other) const {
            if (time != other.time) return time > other.time;
            if (kind != other.kind) return kind > other.kind;
            return id > other.id;
        }
    };

    void decide(int robot, double now, const Chooser& chooser, std::vector<TraceEvent>* trace);
    void commit(int robot, int task_id, double now, std::vector<TraceEvent>* trace);
    void handle_arrival(const Event& e, const Chooser& chooser, std::vector<TraceEvent>* trace);
    void handle_completion(const Event& e, const Chooser& chooser, std::vector<TraceEvent>* trace);

    const TravelTimeMatrix* travel_;
    double beta_;
    std::vector<EngineTask> tasks_;
    std::vector<EngineRobot> robots_;
    std::vector<std::vector<std::pair<int, double>>> executed_;
    std::priority_queue<Event, std::vector<Event>, std::greater<Event>> queue_;
    int completed_count_ = 0;
};

}  // namespace mompda::detail
