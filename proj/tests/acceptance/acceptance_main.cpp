// Acceptance suite. Each criterion prints one PASS/FAIL line; the process
// exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "mompda/baselines.hpp"
#include "mompda/construction.hpp"
#include "mompda/core.hpp"
#include "mompda/experiment.hpp"
#include "mompda/generator.hpp"
#include "mompda/hdmoea.hpp"
#include "mompda/metrics.hpp"
#include "mompda/rng.hpp"
#include "mompda/simulator.hpp"
#include "mompda/stats.hpp"
#include "support/oracle.hpp"
#include "support/test_util.hpp"

using namespace mompda;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& label, const std::string& detail) {
    std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, label.c_str(), detail.c_str());
    if (!pass) ++failures;
}

double elapsed_seconds(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Instance tiny_instance() {
    Instance instance;
    instance.name = "tiny";
    instance.depot = {0.0, 0.0};
    instance.task_positions = {{1.0, 0.0}};
    instance.initial_demands = {1.0};
    instance.increment_rates = {0.05};
    instance.robot_ability = 0.065;
    instance.robot_speed = 1.0;
    return instance;
}

Instance random_feasible_instance(Rng& rng, int max_tasks, double alpha_hi) {
    Instance instance;
    instance.name = "rand";
    instance.depot = {rng.uniform01(), rng.uniform01()};
    const int n = 1 + static_cast<int>(rng.below(max_tasks));
    for (int j = 0; j < n; ++j) {
        instance.task_positions.push_back({rng.uniform01(), rng.uniform01()});
        instance.initial_demands.push_back(rng.uniform(0.5, 1.5));
        instance.increment_rates.push_back(rng.uniform(0.1, alpha_hi));
    }
    instance.robot_ability = 1.0;
    instance.robot_speed = 1.0;
    return instance;
}

// 1. decode vs fixed-step oracle on 100 small instances.
void criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    const double dt = 1e-4;
    Rng rng(20240001);
    int agreeing = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Instance instance = mompda::testing::mixed_rate_instance(rng, 4);
        const TravelTimeMatrix travel = build_travel_times(instance);
        const SolutionMatrix solution =
            random_solution(instance.task_count(), 1 + static_cast<int>(rng.below(3)), rng);

        const Evaluation expected = decode(instance, travel, solution);
        const Evaluation stepped = mompda::testing::oracle_decode(instance, travel, solution, dt);
        bool ok = expected.feasible == stepped.feasible;
        if (ok && expected.feasible) {
            for (int j = 0; j < instance.task_count(); ++j) {
                const double err = std::abs(expected.completion_times[j] - stepped.completion_times[j]);
                worst = std::max(worst, err);
                if (err > 1e-2) ok = false;
            }
        }
        if (ok) ++agreeing;
    }
    const double seconds = elapsed_seconds(start);
    std::ostringstream detail;
    detail << agreeing << "/100 agree, worst ct error " << worst << ", " << seconds << " s";
    report(1, agreeing == 100 && seconds < 60.0, "simulator oracle equivalence", detail.str());
}

// 2. The three-arrival demand scenario.
void criterion_2() {
    const std::vector<double> arrivals{2.0, 4.0, 6.0};
    const auto ct = complete_time(1.0, 3.0, 1.5, arrivals);
    const DemandProfile profile = demand_profile(3.0, 1.5, arrivals);
    const bool ct_ok = ct.has_value() && std::abs(*ct - 38.0 / 3.0) <= 1e-9;
    const bool rates_ok =
        profile.rates == std::vector<double>{3.0, 1.5, 0.0, -1.5};
    std::ostringstream detail;
    detail << "ct = " << (ct ? *ct : -1.0) << ", rates";
    for (double r : profile.rates) detail << ' ' << r;
    report(2, ct_ok && rates_ok, "figure scenario completes at 38/3", detail.str());
}

// 3. Demand ledger closes on 1000 random feasible decodes.
void criterion_3() {
    Rng rng(20240003);
    int decodes = 0;
    double worst_rel = 0.0;
    bool ok = true;
    while (decodes < 1000) {
        const Instance instance = random_feasible_instance(rng, 5, 0.9);
        const TravelTimeMatrix travel = build_travel_times(instance);
        const SolutionMatrix solution =
            random_solution(instance.task_count(), 1 + static_cast<int>(rng.below(3)), rng);
        const Evaluation eval = decode(instance, travel, solution);
        if (!eval.feasible) continue;
        ++decodes;
        for (int j = 1; j <= instance.task_count(); ++j) {
            const double ct = eval.completion_times[j - 1];
            const double lhs = instance.initial_demands[j - 1] + instance.increment_rates[j - 1] * ct;
            double rhs = 0.0;
            for (const auto& events : eval.arrival_events)
                for (const auto& [task, at] : events)
                    if (task == j) rhs += instance.robot_ability * (ct - at);
            const double rel = std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1.0});
            worst_rel = std::max(worst_rel, rel);
            if (rel > 1e-6) ok = false;
        }
    }
    std::ostringstream detail;
    detail << decodes << " feasible decodes, worst relative imbalance " << worst_rel;
    report(3, ok, "demand-balance invariant", detail.str());
}

// 4. Exact two-point front on the single-task instance.
void criterion_4() {
    const Instance instance = tiny_instance();
    EngineConfig config;
    config.nfe_budget = 500;
    int exact = 0;
    for (int seed = 1; seed <= 20; ++seed) {
        const ParetoArchive archive = run_hdmoea(instance, config, seed);
        if (archive.size() != 2) continue;
        std::vector<ObjectiveVector> front;
        for (const ArchiveEntry& e : archive.entries) front.push_back(e.objectives);
        std::sort(front.begin(), front.end(),
                  [](const ObjectiveVector& a, const ObjectiveVector& b) { return a.robot_count < b.robot_count; });
        if (front[0].robot_count == 1 && std::abs(front[0].makespan - 71.0) <= 1e-6 &&
            front[1].robot_count == 2 && std::abs(front[1].makespan - 14.125) <= 1e-6)
            ++exact;
    }
    std::ostringstream detail;
    detail << exact << "/20 seeds returned {(71,1), (14.125,2)}";
    report(4, exact >= 19, "exact tiny front", detail.str());
}

// 5. Operator validity and the PMX trace.
void criterion_5() {
    const std::vector<int> p1{1, 2, 3, 4, 5, 6, 7, 8, 9};
    const std::vector<int> p2{9, 3, 7, 8, 2, 6, 5, 1, 4};
    const auto [traced, unused] = pmx_with_cuts(p1, p2, 3, 6);
    const bool trace_ok = traced == std::vector<int>{9, 3, 2, 4, 5, 6, 7, 1, 8};

    Rng rng(20240005);
    long long invalid = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(8));
        const int ma = 1 + static_cast<int>(rng.below(4));
        const int mb = 1 + static_cast<int>(rng.below(4));
        SolutionMatrix a, b;
        Evaluation ea, eb;
        for (int i = 0; i < ma; ++i) a.rows.push_back(rng.permutation(n));
        for (int i = 0; i < mb; ++i) b.rows.push_back(rng.permutation(n));
        ea.invalid_counts.resize(ma);
        eb.invalid_counts.resize(mb);
        for (int& x : ea.invalid_counts) x = static_cast<int>(rng.below(n + 1));
        for (int& x : eb.invalid_counts) x = static_cast<int>(rng.below(n + 1));
        for (const SolutionMatrix& child : reproduce(a, ea, b, eb, 0.9, rng))
            if (!is_valid_solution(child, n)) ++invalid;
    }
    std::ostringstream detail;
    detail << "trace " << (trace_ok ? "exact" : "wrong") << ", " << invalid << " invalid children in 10^4 calls";
    report(5, trace_ok && invalid == 0, "operator validity", detail.str());
}

// 6. Indicator worked examples plus Monte-Carlo agreement.
void criterion_6() {
    bool ok = true;
    std::ostringstream detail;

    const std::vector<NormalizedPoint> single{{0.5, 0.5}};
    if (std::abs(hv(single, kReferencePoint) - 0.36) > 1e-12) ok = false;
    const std::vector<NormalizedPoint> pair{{0.2, 0.8}, {0.8, 0.2}};
    if (std::abs(hv(pair, kReferencePoint) - 0.45) > 1e-12) ok = false;
    if (hv({}, kReferencePoint) != 0.0) ok = false;
    const std::vector<NormalizedPoint> reference{{0.0, 1.0}, {1.0, 0.0}};
    const std::vector<NormalizedPoint> half{{0.0, 1.0}};
    if (std::abs(igd(reference, half) - std::sqrt(2.0) / 2.0) > 1e-12) ok = false;
    detail << "worked examples " << (ok ? "exact" : "off") << "; ";

    Rng rng(20240006);
    int mc_ok = 0;
    const int fronts = 20;
    const int samples = 1000000;
    for (int f = 0; f < fronts; ++f) {
        std::vector<NormalizedPoint> front;
        const int points = 1 + static_cast<int>(rng.below(8));
        for (int i = 0; i < points; ++i) front.push_back({rng.uniform01(), rng.uniform01()});
        const double exact = hv(front, kReferencePoint);
        int hits = 0;
        for (int s = 0; s < samples; ++s) {
            const double x = rng.uniform(0.0, 1.1);
            const double y = rng.uniform(0.0, 1.1);
            for (const NormalizedPoint& p : front)
                if (x >= p.ob1 && y >= p.ob2) {
                    ++hits;
                    break;
                }
        }
        const double area = 1.1 * 1.1;
        const double p_hat = static_cast<double>(hits) / samples;
        const double se = area * std::sqrt(p_hat * (1.0 - p_hat) / samples);
        if (std::abs(exact - area * p_hat) <= 3.0 * se + 1e-9) ++mc_ok;
    }
    detail << mc_ok << "/" << fronts << " fronts within 3 SE of Monte-Carlo";
    report(6, ok && mc_ok == fronts, "indicator correctness", detail.str());
}

// 7. Rank-sum test anchors.
void criterion_7() {
    const std::vector<double> a{1.0, 2.0, 3.0};
    const std::vector<double> b{4.0, 5.0, 6.0};
    const double p_separated = wilcoxon_rank_sum(a, b);
    const std::vector<double> same{7.0, 7.5, 8.0, 9.0};
    const double p_identical = wilcoxon_rank_sum(same, same);
    std::ostringstream detail;
    detail << "p({1,2,3},{4,5,6}) = " << p_separated << ", identical-sample p = " << p_identical;
    report(7, p_separated == 0.1 && p_identical == 1.0, "statistical machinery", detail.str());
}

// 8. HDMOEA beats random search on hypervolume at equal budget.
void criterion_8() {
    const auto start = std::chrono::steady_clock::now();
    InstanceSpec spec = benchmark_table()[5].spec;  // 10_C_R_4.29
    spec.seed = benchmark_row_seed(42, 6);
    const Instance instance = generate_instance(spec);
    const RobotBounds bounds = robot_bounds(instance);

    EngineConfig engine;
    engine.pop_size = 40;
    engine.nfe_budget = 10000;
    BaselineConfig baseline;
    baseline.pop_size = 40;
    baseline.nfe_budget = 10000;

    auto hv_of = [&](const ParetoArchive& archive) {
        std::vector<NormalizedPoint> points;
        for (const ArchiveEntry& e : archive.entries)
            points.push_back(clamp_to_indicator_box(normalize(e.objectives, bounds)));
        return hv(points, kReferencePoint);
    };

    std::vector<double> hv_engine, hv_random;
    int wins = 0;
    for (int seed = 1; seed <= 20; ++seed) {
        const double engine_hv = hv_of(run_hdmoea(instance, engine, seed));
        const double random_hv = hv_of(run_random_search(instance, baseline, seed));
        hv_engine.push_back(engine_hv);
        hv_random.push_back(random_hv);
        if (engine_hv > random_hv) ++wins;
    }
    const double p = wilcoxon_rank_sum(hv_engine, hv_random);
    const double seconds = elapsed_seconds(start);
    std::ostringstream detail;
    detail << wins << "/20 paired wins, rank-sum p = " << p << ", " << seconds << " s";
    report(8, wins >= 18 && p < 0.05 && seconds < 600.0, "search effectiveness on 10_C_R_4.29", detail.str());
}

// 9. Heuristic initial solutions beat 22 random ones.
void criterion_9() {
    const int rows[] = {6, 17, 21};  // 10, 15 and 20 tasks
    bool all_ok = true;
    std::ostringstream detail;
    for (int row : rows) {
        InstanceSpec spec = benchmark_table()[row - 1].spec;
        spec.seed = benchmark_row_seed(42, row);
        const Instance instance = generate_instance(spec);
        const TravelTimeMatrix travel = build_travel_times(instance);
        const RobotBounds bounds = robot_bounds(instance);
        const int m = (bounds.lbm + bounds.ubm) / 2;

        int wins = 0;
        for (int trial = 1; trial <= 20; ++trial) {
            Rng rng(9000 + trial);
            Evaluator evaluator{&instance, &travel};
            const SolutionMatrix built = heuristic_solution(instance, travel, m, rng, evaluator);
            const double built_makespan = decode(instance, travel, built).penalty_makespan;
            double best_random = std::numeric_limits<double>::infinity();
            for (int i = 0; i < 22; ++i) {
                const SolutionMatrix candidate = random_solution(instance.task_count(), m, rng);
                best_random = std::min(best_random, decode(instance, travel, candidate).penalty_makespan);
            }
            if (built_makespan <= best_random) ++wins;
        }
        detail << instance.name << " " << wins << "/20  ";
        if (wins < 16) all_ok = false;
    }
    report(9, all_ok, "initialization effectiveness", detail.str());
}

// 10. Bit-identical front files per seed; clean archives everywhere.
void criterion_10() {
    InstanceSpec spec = benchmark_table()[5].spec;
    spec.seed = benchmark_row_seed(42, 6);
    const Instance instance = generate_instance(spec);

    bool identical = true;
    bool clean = true;
    auto inspect = [&](const ParetoArchive& a, const ParetoArchive& b) {
        std::vector<ObjectiveVector> fa, fb;
        for (const ArchiveEntry& e : a.entries) fa.push_back(e.objectives);
        for (const ArchiveEntry& e : b.entries) fb.push_back(e.objectives);
        if (front_csv(fa) != front_csv(fb)) identical = false;
        std::sort(fa.begin(), fa.end(),
                  [](const ObjectiveVector& x, const ObjectiveVector& y) { return x.robot_count < y.robot_count; });
        for (std::size_t i = 0; i < fa.size(); ++i) {
            for (std::size_t j = 0; j < fa.size(); ++j)
                if (i != j && dominates(fa[i], fa[j])) clean = false;
            if (i > 0 && !(fa[i].robot_count > fa[i - 1].robot_count && fa[i].makespan < fa[i - 1].makespan))
                clean = false;
        }
    };

    EngineConfig engine;
    engine.pop_size = 20;
    engine.nfe_budget = 2000;
    inspect(run_hdmoea(instance, engine, 11), run_hdmoea(instance, engine, 11));

    BaselineConfig baseline;
    baseline.pop_size = 20;
    baseline.nfe_budget = 2000;
    inspect(run_nsga2(instance, baseline, 11), run_nsga2(instance, baseline, 11));
    inspect(run_moead(instance, baseline, 11), run_moead(instance, baseline, 11));
    inspect(run_random_search(instance, baseline, 11), run_random_search(instance, baseline, 11));

    std::ostringstream detail;
    detail << (identical ? "front CSVs bit-identical" : "front CSVs differ") << ", "
           << (clean ? "fronts clean" : "dominance violation");
    report(10, identical && clean, "determinism and archive invariants", detail.str());
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();

    if (failures == 0)
        std::printf("all 10 acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
