#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mompda/baselines.hpp"
#include "mompda/core.hpp"
#include "mompda/hdmoea.hpp"
#include "mompda/simulator.hpp"

namespace mompda {

// Atomic file write: temp file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content);

// Front CSV: header "makespan,robot_count", rows sorted by robot count.
std::string front_csv(std::span<const ObjectiveVector> front);
void write_front_csv(const std::string& path, std::span<const ObjectiveVector> front);
std::vector<ObjectiveVector> read_front_csv(const std::string& path);

// Run-log CSV: generation, evaluations, archive size, then one best-makespan
// column per fleet size in [LBM, UBM] (blank when the archive has no entry).
std::string run_log_csv(std::span<const GenerationLog> log, const RobotBounds& bounds);

inline const char* const kAlgorithmNames[] = {"hdmoea", "nsga2", "moead", "moead-dra", "random"};
bool is_known_algorithm(const std::string& name);

struct ExperimentConfig {
    std::vector<std::string> instance_paths;
    std::vector<std::string> algorithms;
    int runs = 20;
    std::uint64_t base_seed = 1;
    int pop_size = 100;
    long long nfe_budget = 50000;
    std::string out_dir = "results";
    int workers = 0;  // 0 -> hardware concurrency
    bool dump_trajectories = false;

    void validate() const;
};

ExperimentConfig load_experiment_config(const std::string& path);

std::uint64_t run_seed(std::uint64_t base_seed, int run_index);

struct RunRecord {
    std::string algorithm;
    std::string instance_name;
    std::string instance_path;
    int run_index = 0;
    std::uint64_t seed = 0;
    int lbm = 1, ubm = 1;
    double wall_seconds = 0.0;
    std::string front_file;
    std::string log_file;
    std::string trace_file;  // empty unless trajectories were dumped
    bool ok = false;
    std::string error;
};

// Runs every (algorithm, instance, run) combination, dispatching across a
// worker pool. Per-run failures are recorded, not fatal. Artifacts land in
// config.out_dir together with manifest.json.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config);

void write_manifest(const std::string& path, const ExperimentConfig& config, std::span<const RunRecord> records);

struct IndicatorRow {
    std::string algorithm;
    std::string instance;
    std::uint64_t seed = 0;
    double hv = 0.0;
    double igd = 0.0;
};

struct SummaryRow {
    std::string algorithm;
    std::string instance;
    int runs = 0;
    double hv_mean = 0.0, hv_std = 0.0;
    double igd_mean = 0.0, igd_std = 0.0;
};

struct WilcoxonRow {
    std::string instance;
    std::string metric;  // "hv" or "igd"
    std::string algorithm_a;
    std::string algorithm_b;
    double p_raw = 1.0;
    double p_bonferroni = 1.0;
    bool significant = false;  // at the 5% level after correction
};

struct CompareReport {
    std::vector<IndicatorRow> indicators;
    std::vector<SummaryRow> summary;
    std::vector<WilcoxonRow> tests;
};

// Reads manifest.json in `results_dir`, builds the merged reference front per
// instance, computes HV/IGD per run, and runs pairwise Wilcoxon tests with
// Bonferroni correction. Throws std::runtime_error when algorithms have
// mismatched run counts.
CompareReport compare_runs(const std::string& results_dir);

void write_compare_csvs(const std::string& out_dir, const CompareReport& report);

// makespan, robot_count, ob1, ob2 (clamped) per front point.
std::string scatter_csv(std::span<const ObjectiveVector> front, const RobotBounds& bounds);

// Minimal SVG scatter of the normalized front.
std::string scatter_svg(std::span<const ObjectiveVector> front, const RobotBounds& bounds);

// Turns a trace dump into per-robot activity segments:
// robot, activity{travel, execute}, task, start, end.
std::string timeline_csv(std::span<const TraceEvent> events);
std::vector<TraceEvent> read_trace_csv(const std::string& path);

}  // namespace mompda
