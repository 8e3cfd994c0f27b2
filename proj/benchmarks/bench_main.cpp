#include <benchmark/benchmark.h>

#include "mompda/construction.hpp"
#include "mompda/generator.hpp"
#include "mompda/hdmoea.hpp"
#include "mompda/metrics.hpp"
#include "mompda/rng.hpp"
#include "mompda/simulator.hpp"

namespace {

using namespace mompda;

Instance bench_instance(int row) {
    InstanceSpec spec = benchmark_table()[row - 1].spec;
    spec.seed = benchmark_row_seed(42, row);
    return generate_instance(spec);
}

void BM_Decode(benchmark::State& state) {
    const Instance instance = bench_instance(static_cast<int>(state.range(0)));
    const TravelTimeMatrix travel = build_travel_times(instance);
    const RobotBounds bounds = robot_bounds(instance);
    Rng rng(1);
    const SolutionMatrix solution =
        random_solution(instance.task_count(), (bounds.lbm + bounds.ubm) / 2, rng);
    for (auto _ : state) {
        const Evaluation eval = decode(instance, travel, solution);
        benchmark::DoNotOptimize(eval.penalty_makespan);
    }
}
BENCHMARK(BM_Decode)->Arg(6)->Arg(21)->Arg(30);

void BM_Pmx(benchmark::State& state) {
    Rng rng(2);
    const int n = static_cast<int>(state.range(0));
    const std::vector<int> p1 = rng.permutation(n);
    const std::vector<int> p2 = rng.permutation(n);
    for (auto _ : state) {
        auto children = pmx(p1, p2, rng);
        benchmark::DoNotOptimize(children.first.data());
    }
}
BENCHMARK(BM_Pmx)->Arg(20)->Arg(120);

void BM_Hypervolume(benchmark::State& state) {
    Rng rng(3);
    std::vector<NormalizedPoint> front;
    for (int i = 0; i < state.range(0); ++i) front.push_back({rng.uniform01(), rng.uniform01()});
    for (auto _ : state) benchmark::DoNotOptimize(hv(front, kReferencePoint));
}
BENCHMARK(BM_Hypervolume)->Arg(16)->Arg(256);

void BM_HeuristicCandidate(benchmark::State& state) {
    const Instance instance = bench_instance(6);
    const TravelTimeMatrix travel = build_travel_times(instance);
    const RobotBounds bounds = robot_bounds(instance);
    for (auto _ : state) {
        const SolutionMatrix s = heuristic_candidate(instance, travel, (bounds.lbm + bounds.ubm) / 2, 0.5, true);
        benchmark::DoNotOptimize(s.rows.data());
    }
}
BENCHMARK(BM_HeuristicCandidate);

}  // namespace

BENCHMARK_MAIN();
