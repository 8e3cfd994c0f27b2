#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <limits>

#include "mompda/construction.hpp"
#include "mompda/core.hpp"
#include "mompda/rng.hpp"
#include "mompda/simulator.hpp"
#include "support/oracle.hpp"
#include "support/test_util.hpp"

using namespace mompda;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Two tasks with depot->1 = 1 and 1->2 = 1 (speed 1).
Instance two_task_line_instance() {
    Instance instance;
    instance.name = "line";
    instance.depot = {0.0, 0.0};
    instance.task_positions = {{1.0, 0.0}, {1.0, 1.0}};
    instance.initial_demands = {2.0, 3.0};
    instance.increment_rates = {0.0, 1.0};
    instance.robot_ability = 1.0;
    instance.robot_speed = 1.0;
    return instance;
}

}  // namespace

TEST_SUITE("simulator") {

TEST_CASE("demand profile of the three-arrival scenario") {
    const std::vector<double> arrivals{2.0, 4.0, 6.0};
    const DemandProfile profile = demand_profile(3.0, 1.5, arrivals);
    REQUIRE(profile.rates.size() == 4);
    CHECK(profile.rates[0] == 3.0);
    CHECK(profile.rates[1] == 1.5);
    CHECK(profile.rates[2] == 0.0);
    CHECK(profile.rates[3] == -1.5);
    CHECK(profile.segment_starts == std::vector<double>{0.0, 2.0, 4.0, 6.0});
}

TEST_CASE("complete_time examples") {
    SUBCASE("single segment") {
        const std::vector<double> arrivals{2.0};
        const auto ct = complete_time(10.0, 0.0, 1.0, arrivals);
        REQUIRE(ct.has_value());
        CHECK(*ct == doctest::Approx(12.0).epsilon(1e-12));
    }
    SUBCASE("three arrivals") {
        const std::vector<double> arrivals{2.0, 4.0, 6.0};
        const auto ct = complete_time(1.0, 3.0, 1.5, arrivals);
        REQUIRE(ct.has_value());
        CHECK(std::abs(*ct - 38.0 / 3.0) < 1e-9);
    }
    SUBCASE("never completes") {
        const std::vector<double> arrivals{0.0};
        CHECK_FALSE(complete_time(5.0, 2.0, 1.0, arrivals).has_value());
    }
    SUBCASE("zero crossing before a later arrival") {
        const std::vector<double> arrivals{0.0, 100.0};
        const auto ct = complete_time(1.0, 0.0, 1.0, arrivals);
        REQUIRE(ct.has_value());
        CHECK(*ct == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("arrivals must not be empty") {
        CHECK_THROWS_AS(complete_time(1.0, 0.0, 1.0, {}), std::invalid_argument);
    }
}

TEST_CASE("decode: two robots sweep two tasks") {
    const Instance instance = two_task_line_instance();
    const TravelTimeMatrix travel = build_travel_times(instance);
    SolutionMatrix solution{{{1, 2}, {1, 2}}};

    const Evaluation eval = decode(instance, travel, solution);
    REQUIRE(eval.feasible);
    CHECK(eval.completion_times[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(eval.completion_times[1] == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(eval.objectives.makespan == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(eval.objectives.robot_count == 2);
    CHECK(eval.invalid_counts == std::vector<int>{0, 0});
    CHECK(eval.penalty_makespan == eval.objectives.makespan);
}

TEST_CASE("decode: single robot, single task") {
    const Instance instance = mompda::testing::single_task_instance(1.0, 0.05, 0.065);
    const Evaluation eval = decode(instance, build_travel_times(instance), SolutionMatrix{{{1}}});
    REQUIRE(eval.feasible);
    CHECK(eval.objectives.makespan == doctest::Approx(71.0).epsilon(1e-9));
}

TEST_CASE("decode: infeasible single robot gets the penalty") {
    const Instance instance = mompda::testing::single_task_instance(1.0, 0.2, 0.1);  // alpha = 2 beta
    const Evaluation eval = decode(instance, build_travel_times(instance), SolutionMatrix{{{1}}});
    CHECK_FALSE(eval.feasible);
    CHECK(eval.penalty_makespan == kPenaltyBase + kPenaltyPerUnfinishedTask);
    CHECK(eval.completion_times[0] == kInf);
    CHECK(eval.invalid_counts == std::vector<int>{1});
}

TEST_CASE("decode rejects malformed rows instead of penalising them") {
    const Instance instance = two_task_line_instance();
    const TravelTimeMatrix travel = build_travel_times(instance);
    CHECK_THROWS_AS(decode(instance, travel, SolutionMatrix{{{1, 1}}}), std::invalid_argument);
    CHECK_THROWS_AS(decode(instance, travel, SolutionMatrix{{{1}}}), std::invalid_argument);
    CHECK_THROWS_AS(decode(instance, travel, SolutionMatrix{{{1, 3}}}), std::invalid_argument);
    CHECK_THROWS_AS(decode(instance, travel, SolutionMatrix{}), std::invalid_argument);
}

TEST_CASE("decode is deterministic") {
    Rng rng(99);
    const Instance instance = mompda::testing::random_instance(rng, 5);
    const TravelTimeMatrix travel = build_travel_times(instance);
    const SolutionMatrix solution = random_solution(5, 3, rng);
    CHECK(decode(instance, travel, solution) == decode(instance, travel, solution));
}

TEST_CASE("feasible decodes balance the demand ledger") {
    Rng rng(42);
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const Instance instance = mompda::testing::random_instance(rng, 1 + static_cast<int>(rng.below(5)));
        const TravelTimeMatrix travel = build_travel_times(instance);
        const SolutionMatrix solution =
            random_solution(instance.task_count(), 1 + static_cast<int>(rng.below(3)), rng);
        const Evaluation eval = decode(instance, travel, solution);
        REQUIRE(eval.feasible);  // rates stay below one robot's ability
        ++checked;

        for (int j = 1; j <= instance.task_count(); ++j) {
            const double ct = eval.completion_times[j - 1];
            const double lhs = instance.initial_demands[j - 1] + instance.increment_rates[j - 1] * ct;
            double rhs = 0.0;
            int executors = 0;
            for (const auto& events : eval.arrival_events)
                for (const auto& [task, at] : events)
                    if (task == j) {
                        rhs += instance.robot_ability * (ct - at);
                        ++executors;
                    }
            CHECK(std::abs(lhs - rhs) <= 1e-6 * std::max({std::abs(lhs), std::abs(rhs), 1.0}));
            // Feasibility constraint: committed ability strictly beats the rate.
            CHECK(instance.increment_rates[j - 1] < executors * instance.robot_ability);
            CHECK(executors >= 1);
        }
    }
    CHECK(checked == 100);
}

TEST_CASE("every robot executes a task at most once") {
    Rng rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        const Instance instance = mompda::testing::random_instance(rng, 4);
        const TravelTimeMatrix travel = build_travel_times(instance);
        const SolutionMatrix solution = random_solution(4, 2, rng);
        const Evaluation eval = decode(instance, travel, solution);
        for (const auto& events : eval.arrival_events) {
            std::vector<int> seen;
            for (const auto& [task, at] : events) {
                CHECK(std::count(seen.begin(), seen.end(), task) == 0);
                seen.push_back(task);
            }
        }
    }
}

TEST_CASE("appending duplicate rows never worsens the makespan") {
    Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const Instance instance = mompda::testing::random_instance(rng, 4);
        const TravelTimeMatrix travel = build_travel_times(instance);
        SolutionMatrix solution = random_solution(4, 2, rng);
        const Evaluation base = decode(instance, travel, solution);
        REQUIRE(base.feasible);

        solution.rows.push_back(solution.rows[0]);
        const Evaluation extended = decode(instance, travel, solution);
        REQUIRE(extended.feasible);
        CHECK(extended.objectives.makespan <= base.objectives.makespan + 1e-9);
    }
}

TEST_CASE("trace events cover departures, arrivals and completions") {
    const Instance instance = two_task_line_instance();
    const TravelTimeMatrix travel = build_travel_times(instance);
    std::vector<TraceEvent> trace;
    decode(instance, travel, SolutionMatrix{{{1, 2}, {1, 2}}}, &trace);

    int departs = 0, arrives = 0, completes = 0;
    for (const TraceEvent& e : trace) {
        if (e.kind == TraceEvent::Kind::Depart) ++departs;
        if (e.kind == TraceEvent::Kind::Arrive) ++arrives;
        if (e.kind == TraceEvent::Kind::Complete) ++completes;
    }
    CHECK(departs == 4);
    CHECK(arrives == 4);
    CHECK(completes == 4);  // both robots execute both tasks
}

TEST_CASE("oracle agrees with decode on the worked examples") {
    SUBCASE("two robots, two tasks") {
        const Instance instance = two_task_line_instance();
        const TravelTimeMatrix travel = build_travel_times(instance);
        const SolutionMatrix solution{{{1, 2}, {1, 2}}};
        const double dt = 1e-3;
        const Evaluation expected = decode(instance, travel, solution);
        const Evaluation stepped = mompda::testing::oracle_decode(instance, travel, solution, dt);
        REQUIRE(stepped.feasible == expected.feasible);
        for (int j = 0; j < 2; ++j)
            CHECK(std::abs(stepped.completion_times[j] - expected.completion_times[j]) <= 10 * dt);
    }
    SUBCASE("single task") {
        const Instance instance = mompda::testing::single_task_instance(1.0, 0.05, 0.065);
        const TravelTimeMatrix travel = build_travel_times(instance);
        const double dt = 1e-3;
        const Evaluation stepped = mompda::testing::oracle_decode(instance, travel, SolutionMatrix{{{1}}}, dt);
        REQUIRE(stepped.feasible);
        CHECK(std::abs(stepped.objectives.makespan - 71.0) <= 10 * dt);
    }
    SUBCASE("infeasible plan is flagged") {
        const Instance instance = mompda::testing::single_task_instance(1.0, 0.2, 0.1);
        const TravelTimeMatrix travel = build_travel_times(instance);
        const Evaluation stepped = mompda::testing::oracle_decode(instance, travel, SolutionMatrix{{{1}}}, 1e-3);
        CHECK_FALSE(stepped.feasible);
        CHECK(stepped.penalty_makespan == kPenaltyBase + kPenaltyPerUnfinishedTask);
    }
}

TEST_CASE("oracle discretisation error is first order in dt") {
    // Exact completion: travel 2, then 10 demand units at net rate 1.
    Instance instance = mompda::testing::single_task_instance(10.0, 0.0, 1.0);
    instance.robot_speed = 0.5;
    const TravelTimeMatrix travel = build_travel_times(instance);
    const SolutionMatrix solution{{{1}}};
    const double exact = decode(instance, travel, solution).objectives.makespan;
    CHECK(exact == doctest::Approx(12.0).epsilon(1e-12));

    for (double dt : {2e-3, 1e-3, 5e-4}) {
        const Evaluation stepped = mompda::testing::oracle_decode(instance, travel, solution, dt);
        CHECK(std::abs(stepped.objectives.makespan - exact) <= 2 * dt);
    }
}

TEST_CASE("oracle matches decode on random mixed-feasibility instances") {
    Rng rng(20240);
    const double dt = 1e-3;
    for (int trial = 0; trial < 20; ++trial) {
        const Instance instance = mompda::testing::mixed_rate_instance(rng, 4);
        const TravelTimeMatrix travel = build_travel_times(instance);
        const SolutionMatrix solution =
            random_solution(instance.task_count(), 1 + static_cast<int>(rng.below(3)), rng);

        const Evaluation expected = decode(instance, travel, solution);
        const Evaluation stepped = mompda::testing::oracle_decode(instance, travel, solution, dt);
        REQUIRE(stepped.feasible == expected.feasible);
        if (expected.feasible)
            for (int j = 0; j < instance.task_count(); ++j)
                CHECK(std::abs(stepped.completion_times[j] - expected.completion_times[j]) <= 50 * dt);
    }
}

}  // TEST_SUITE
