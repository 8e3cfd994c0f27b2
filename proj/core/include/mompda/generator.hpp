#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mompda/core.hpp"

namespace mompda {

enum class RobotLayout { Central, Eccentric };
enum class TaskLayout { Random, Clustered, RandomClustered };

std::string to_string(RobotLayout layout);  // "C" / "EC"
std::string to_string(TaskLayout layout);   // "R" / "CL" / "RCL"

struct InstanceSpec {
    int n_tasks = 1;
    RobotLayout robot_layout = RobotLayout::Central;
    TaskLayout task_layout = TaskLayout::Random;
    double ability_low = 0.0, ability_high = 0.0;  // beta range; beta = midpoint
    double rate_low = 0.0, rate_high = 0.0;        // alpha range, drawn per task
    std::uint64_t seed = 0;
    std::string name_suffix;  // disambiguates repeated names in the benchmark table
};

// Ratio column of an instance name: mean(rate)/mean(ability), rounded to two
// decimals, trailing zero trimmed ("1.00" prints as "1.0").
std::string format_ratio(double ratio);

std::string instance_name(const InstanceSpec& spec);

struct ParsedName {
    int n_tasks = 0;
    RobotLayout robot_layout = RobotLayout::Central;
    TaskLayout task_layout = TaskLayout::Random;
    std::string ratio;
    std::string suffix;
};

std::optional<ParsedName> parse_instance_name(const std::string& name);

// Deterministic for a fixed seed. Depot at (0.5,0.5) (Central) or
// (0.05,0.05) (Eccentric). Random tasks are i.i.d. uniform in the unit
// square; Clustered tasks are Gaussian (sigma 0.05, clamped) around one of
// max(2, ceil(N/10)) uniform cluster seeds; RandomClustered flips a fair coin
// per task. alpha ~ U(rate range), q0 ~ U(0.5, 1.5), beta = ability
// midpoint. Throws std::invalid_argument on bad ranges.
Instance generate_instance(const InstanceSpec& spec);

struct BenchmarkRow {
    int id = 0;  // 1-based position in the table
    InstanceSpec spec;
};

// The 45-row benchmark table (seeds unset).
const std::vector<BenchmarkRow>& benchmark_table();

// One instance per table row; row seeds derived from the master seed.
std::vector<Instance> benchmark_suite(std::uint64_t master_seed);

// Seed used for one row of the suite.
std::uint64_t benchmark_row_seed(std::uint64_t master_seed, int row_id);

}  // namespace mompda
