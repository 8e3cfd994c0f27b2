#include "mompda/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "mompda/rng.hpp"

namespace mompda {

std::string to_string(RobotLayout layout) {
    return layout == RobotLayout::Central ? "C" : "EC";
}

std::string to_string(TaskLayout layout) {
    switch (layout) {
        case TaskLayout::Random: return "R";
        case TaskLayout::Clustered: return "CL";
        default: return "RCL";
    }
}

std::string format_ratio(double ratio) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", ratio);
    std::string s(buf);
    while (s.size() > 1 && s.back() == '0' && s[s.size() - 2] != '.') s.pop_back();
    return s;
}

std::string instance_name(const InstanceSpec& spec) {
    const double ratio = ((spec.rate_low + spec.rate_high) / 2.0) / ((spec.ability_low + spec.ability_high) / 2.0);
    return std::to_string(spec.n_tasks) + "_" + to_string(spec.robot_layout) + "_" + to_string(spec.task_layout) +
           "_" + format_ratio(ratio) + spec.name_suffix;
}

std::optional<ParsedName> parse_instance_name(const std::string& name) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= name.size(); ++i) {
        if (i == name.size() || name[i] == '_') {
            parts.push_back(name.substr(start, i - start));
            start = i + 1;
        }
    }
    if (parts.size() != 4) return std::nullopt;

    ParsedName parsed;
    try {
        std::size_t used = 0;
        parsed.n_tasks = std::stoi(parts[0], &used);
        if (used != parts[0].size() || parsed.n_tasks < 1) return std::nullopt;
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (parts[1] == "C")
        parsed.robot_layout = RobotLayout::Central;
    else if (parts[1] == "EC")
        parsed.robot_layout = RobotLayout::Eccentric;
    else
        return std::nullopt;
    if (parts[2] == "R")
        parsed.task_layout = TaskLayout::Random;
    else if (parts[2] == "CL")
        parsed.task_layout = TaskLayout::Clustered;
    else if (parts[2] == "RCL")
        parsed.task_layout = TaskLayout::RandomClustered;
    else
        return std::nullopt;

    std::string tail = parts[3];
    while (!tail.empty() && std::isalpha(static_cast<unsigned char>(tail.back()))) {
        parsed.suffix.insert(parsed.suffix.begin(), tail.back());
        tail.pop_back();
    }
    if (tail.empty()) return std::nullopt;
    parsed.ratio = tail;
    return parsed;
}

Instance generate_instance(const InstanceSpec& spec) {
    if (spec.n_tasks < 1) throw std::invalid_argument("generate_instance: n_tasks must be >= 1");
    if (!(spec.ability_low > 0.0) || spec.ability_high < spec.ability_low)
        throw std::invalid_argument("generate_instance: ability range must satisfy 0 < low <= high");
    if (!(spec.rate_low > 0.0) || spec.rate_high < spec.rate_low)
        throw std::invalid_argument("generate_instance: rate range must satisfy 0 < low <= high");

    Rng rng(spec.seed);
    Instance instance;
    instance.name = instance_name(spec);
    instance.seed = spec.seed;
    instance.depot = spec.robot_layout == RobotLayout::Central ? Point{0.5, 0.5} : Point{0.05, 0.05};
    instance.robot_ability = (spec.ability_low + spec.ability_high) / 2.0;
    instance.robot_speed = 1.0;

    const int n = spec.n_tasks;
    std::vector<Point> clusters;
    if (spec.task_layout != TaskLayout::Random) {
        const int k = std::max(2, (n + 9) / 10);
        clusters.reserve(k);
        for (int i = 0; i < k; ++i) clusters.push_back({rng.uniform01(), rng.uniform01()});
    }

    auto clustered_point = [&]() {
        const Point& center = clusters[rng.below(clusters.size())];
        const double x = std::clamp(rng.gaussian(center.x, 0.05), 0.0, 1.0);
        const double y = std::clamp(rng.gaussian(center.y, 0.05), 0.0, 1.0);
        return Point{x, y};
    };

    instance.task_positions.reserve(n);
    for (int j = 0; j < n; ++j) {
        switch (spec.task_layout) {
            case TaskLayout::Random:
                instance.task_positions.push_back({rng.uniform01(), rng.uniform01()});
                break;
            case TaskLayout::Clustered:
                instance.task_positions.push_back(clustered_point());
                break;
            case TaskLayout::RandomClustered:
                if (rng.uniform01() < 0.5)
                    instance.task_positions.push_back({rng.uniform01(), rng.uniform01()});
                else
                    instance.task_positions.push_back(clustered_point());
                break;
        }
    }
    instance.increment_rates.reserve(n);
    for (int j = 0; j < n; ++j) instance.increment_rates.push_back(rng.uniform(spec.rate_low, spec.rate_high));
    instance.initial_demands.reserve(n);
    for (int j = 0; j < n; ++j) instance.initial_demands.push_back(rng.uniform(0.5, 1.5));

    instance.validate();
    return instance;
}

namespace {

std::vector<BenchmarkRow> make_table() {
    struct Row {
        int id;
        int n;
        const char* pr;
        const char* pt;
        double beta_lo, beta_hi;
        double alpha_lo, alpha_hi;
        const char* suffix;
    };
    static const Row rows[] = {
        {1, 5, "C", "CL", 0.02, 0.05, 0.05, 0.15, ""},
        {2, 5, "EC", "RCL", 0.02, 0.05, 0.05, 0.15, ""},
        {3, 10, "C", "R", 0.05, 0.08, 0.02, 0.05, ""},
        {4, 10, "EC", "CL", 0.05, 0.08, 0.02, 0.05, ""},
        {5, 10, "EC", "RCL", 0.02, 0.05, 0.05, 0.08, ""},
        {6, 10, "C", "R", 0.02, 0.05, 0.1, 0.2, ""},
        {7, 10, "C", "RCL", 0.02, 0.05, 0.05, 0.08, ""},
        {8, 10, "C", "CL", 0.05, 0.08, 0.05, 0.08, ""},
        {9, 10, "EC", "RCL", 0.02, 0.05, 0.05, 0.08, "A"},
        {10, 10, "C", "CL", 0.02, 0.05, 0.05, 0.08, ""},
        {11, 10, "C", "R", 0.02, 0.05, 0.05, 0.08, ""},
        {12, 10, "C", "CL", 0.02, 0.05, 0.1, 0.2, ""},
        {13, 10, "EC", "R", 0.02, 0.05, 0.05, 0.15, ""},
        {14, 15, "EC", "CL", 0.05, 0.08, 0.05, 0.08, ""},
        {15, 15, "EC", "CL", 0.02, 0.05, 0.02, 0.05, "A"},
        {16, 15, "EC", "CL", 0.02, 0.05, 0.05, 0.08, ""},
        {17, 15, "C", "RCL", 0.02, 0.05, 0.1, 0.2, ""},
        {18, 20, "EC", "R", 0.05, 0.08, 0.05, 0.08, ""},
        {19, 20, "C", "R", 0.02, 0.05, 0.05, 0.15, ""},
        {20, 20, "EC", "CL", 0.05, 0.08, 0.02, 0.05, ""},
        {21, 20, "C", "R", 0.02, 0.05, 0.1, 0.2, ""},
        {22, 20, "EC", "R", 0.05, 0.08, 0.02, 0.05, ""},
        {23, 20, "EC", "RCL", 0.05, 0.08, 0.05, 0.08, ""},
        {24, 20, "EC", "RCL", 0.02, 0.05, 0.05, 0.15, ""},
        {25, 20, "C", "RCL", 0.02, 0.05, 0.1, 0.2, ""},
        {26, 30, "C", "CL", 0.02, 0.05, 0.02, 0.05, ""},
        {27, 30, "EC", "R", 0.02, 0.05, 0.02, 0.05, ""},
        {28, 30, "C", "RCL", 0.02, 0.05, 0.05, 0.08, ""},
        {29, 30, "EC", "CL", 0.02, 0.05, 0.05, 0.15, ""},
        {30, 30, "C", "R", 0.02, 0.05, 0.1, 0.2, ""},
        {31, 40, "C", "R", 0.05, 0.08, 0.02, 0.05, ""},
        {32, 40, "C", "CL", 0.02, 0.05, 0.05, 0.08, ""},
        {33, 40, "EC", "CL", 0.02, 0.05, 0.02, 0.05, ""},
        {34, 40, "EC", "R", 0.02, 0.05, 0.05, 0.08, ""},
        {35, 40, "EC", "R", 0.02, 0.05, 0.1, 0.2, ""},
        {36, 60, "C", "CL", 0.02, 0.05, 0.02, 0.05, ""},
        {37, 60, "C", "R", 0.05, 0.08, 0.02, 0.05, ""},
        {38, 60, "C", "R", 0.05, 0.08, 0.05, 0.08, ""},
        {39, 60, "C", "CL", 0.02, 0.05, 0.02, 0.05, "A"},
        {40, 60, "C", "R", 0.02, 0.05, 0.02, 0.05, "A"},
        {41, 60, "EC", "R", 0.02, 0.05, 0.02, 0.05, ""},
        {42, 80, "EC", "CL", 0.02, 0.05, 0.02, 0.05, ""},
        {43, 80, "EC", "CL", 0.05, 0.08, 0.02, 0.05, ""},
        {44, 80, "EC", "R", 0.05, 0.08, 0.02, 0.05, ""},
        {45, 120, "EC", "RCL", 0.05, 0.08, 0.05, 0.08, ""},
    };

    std::vector<BenchmarkRow> table;
    table.reserve(std::size(rows));
    for (const Row& r : rows) {
        BenchmarkRow row;
        row.id = r.id;
        row.spec.n_tasks = r.n;
        row.spec.robot_layout = std::string(r.pr) == "C" ? RobotLayout::Central : RobotLayout::Eccentric;
        row.spec.task_layout = std::string(r.pt) == "R"    ? TaskLayout::Random
                               : std::string(r.pt) == "CL" ? TaskLayout::Clustered
                                                           : TaskLayout::RandomClustered;
        row.spec.ability_low = r.beta_lo;
        row.spec.ability_high = r.beta_hi;
        row.spec.rate_low = r.alpha_lo;
        row.spec.rate_high = r.alpha_hi;
        row.spec.name_suffix = r.suffix;
        table.push_back(std::move(row));
    }
    return table;
}

}  // namespace

const std::vector<BenchmarkRow>& benchmark_table() {
    static const std::vector<BenchmarkRow> table = make_table();
    return table;
}

std::uint64_t benchmark_row_seed(std::uint64_t master_seed, int row_id) {
    return splitmix64(master_seed + static_cast<std::uint64_t>(row_id));
}

std::vector<Instance> benchmark_suite(std::uint64_t master_seed) {
    std::vector<Instance> suite;
    suite.reserve(benchmark_table().size());
    for (const BenchmarkRow& row : benchmark_table()) {
        InstanceSpec spec = row.spec;
        spec.seed = benchmark_row_seed(master_seed, row.id);
        suite.push_back(generate_instance(spec));
    }
    return suite;
}

}  // namespace mompda
