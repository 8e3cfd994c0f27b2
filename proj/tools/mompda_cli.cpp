// Command-line harness: instance generation, batch algorithm runs,
// comparison reports, and plot-data emission.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mompda/experiment.hpp"
#include "mompda/generator.hpp"
#include "mompda/instance_io.hpp"
#include "mompda/metrics.hpp"

namespace fs = std::filesystem;
using namespace mompda;

namespace {

int cmd_generate(std::uint64_t seed, bool all, int row, const std::string& out_dir) {
    fs::create_directories(out_dir);

    std::vector<int> ids;
    if (all) {
        for (const BenchmarkRow& r : benchmark_table()) ids.push_back(r.id);
    } else {
        if (row < 1 || row > static_cast<int>(benchmark_table().size()))
            throw std::runtime_error("--row must be in 1.." + std::to_string(benchmark_table().size()));
        ids.push_back(row);
    }

    nlohmann::json manifest;
    manifest["master_seed"] = seed;
    manifest["rows"] = nlohmann::json::array();
    for (int id : ids) {
        InstanceSpec spec = benchmark_table()[id - 1].spec;
        spec.seed = benchmark_row_seed(seed, id);
        const Instance instance = generate_instance(spec);
        const std::string file = (fs::path(out_dir) / (instance.name + ".json")).string();
        save_instance(instance, file);
        manifest["rows"].push_back({{"row", id}, {"name", instance.name}, {"seed", spec.seed}, {"file", file}});
        std::cout << "wrote " << file << "\n";
    }
    write_file_atomic((fs::path(out_dir) / "generate_manifest.json").string(), manifest.dump(2) + "\n");
    return 0;
}

int cmd_run(const ExperimentConfig& config) {
    const std::vector<RunRecord> records = run_experiment(config);
    int failures = 0;
    for (const RunRecord& rec : records) {
        if (rec.ok) {
            std::cout << rec.algorithm << " on " << rec.instance_name << " run " << rec.run_index << ": "
                      << rec.front_file << " (" << rec.wall_seconds << " s)\n";
        } else {
            ++failures;
            std::cerr << rec.algorithm << " on " << rec.instance_name << " run " << rec.run_index
                      << " FAILED: " << rec.error << "\n";
        }
    }
    std::cout << "manifest: " << (fs::path(config.out_dir) / "manifest.json").string() << "\n";
    return failures == 0 ? 0 : 1;
}

int cmd_compare(const std::string& in_dir, const std::string& out_dir) {
    const CompareReport report = compare_runs(in_dir);
    write_compare_csvs(out_dir, report);
    for (const WilcoxonRow& row : report.tests) {
        std::cout << row.instance << " " << row.metric << " " << row.algorithm_a << " vs " << row.algorithm_b
                  << ": p=" << row.p_raw << " (bonferroni " << row.p_bonferroni << ")"
                  << (row.significant ? " significant" : "") << "\n";
    }
    std::cout << "wrote " << (fs::path(out_dir) / "indicators.csv").string() << ", summary.csv, wilcoxon.csv\n";
    return 0;
}

int cmd_plot_data(const std::string& front_path, const std::string& instance_path, const std::string& trajectory,
                  const std::string& out_prefix, bool svg) {
    if (!front_path.empty()) {
        if (instance_path.empty()) throw std::runtime_error("--front needs --instance for normalization bounds");
        const Instance instance = load_instance(instance_path);
        const RobotBounds bounds = robot_bounds(instance);
        const std::vector<ObjectiveVector> front = read_front_csv(front_path);
        write_file_atomic(out_prefix + "_scatter.csv", scatter_csv(front, bounds));
        std::cout << "wrote " << out_prefix << "_scatter.csv\n";
        if (svg) {
            write_file_atomic(out_prefix + "_scatter.svg", scatter_svg(front, bounds));
            std::cout << "wrote " << out_prefix << "_scatter.svg\n";
        }
    }
    if (!trajectory.empty()) {
        const std::vector<TraceEvent> events = read_trace_csv(trajectory);
        write_file_atomic(out_prefix + "_timeline.csv", timeline_csv(events));
        std::cout << "wrote " << out_prefix << "_timeline.csv\n";
    }
    if (front_path.empty() && trajectory.empty())
        throw std::runtime_error("plot-data needs --front and/or --trajectory");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MO-MPDA solver suite"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "Write benchmark instance files");
    std::uint64_t gen_seed = 42;
    bool gen_all = false;
    int gen_row = 0;
    std::string gen_out = "instances";
    generate->add_option("--seed", gen_seed, "Master seed");
    generate->add_flag("--all", gen_all, "Generate the full 45-instance suite");
    generate->add_option("--row", gen_row, "Generate a single table row (1-based)");
    generate->add_option("--out", gen_out, "Output directory");

    // run
    auto* run = app.add_subcommand("run", "Run algorithms over instances");
    std::string run_config_path;
    std::vector<std::string> run_instances;
    std::string run_algos;
    int run_runs = -1;
    std::uint64_t run_seed_value = 0;
    bool run_seed_set = false;
    long long run_nfe = -1;
    int run_pop = -1;
    std::string run_out;
    int run_workers = -1;
    bool run_dump = false;
    run->add_option("--config", run_config_path, "JSON config file (flags win over file values)");
    run->add_option("--instances", run_instances, "Instance JSON files");
    run->add_option("--algo", run_algos, "Comma-separated list: hdmoea,nsga2,moead,moead-dra,random");
    run->add_option("--runs", run_runs, "Independent runs per (algorithm, instance)");
    run->add_option("--seed", run_seed_value, "Base seed")->each([&](const std::string&) { run_seed_set = true; });
    run->add_option("--nfe", run_nfe, "Fitness evaluation budget");
    run->add_option("--pop-size", run_pop, "Population size");
    run->add_option("--out", run_out, "Output directory");
    run->add_option("--workers", run_workers, "Worker threads (0 = hardware concurrency)");
    run->add_flag("--dump-trajectories", run_dump, "Dump the best solution's trajectory per run");

    // compare
    auto* compare = app.add_subcommand("compare", "Indicator tables and rank-sum tests from run artifacts");
    std::string cmp_in, cmp_out;
    compare->add_option("--in", cmp_in, "Results directory containing manifest.json")->required();
    compare->add_option("--out", cmp_out, "Output directory (defaults to --in)");

    // plot-data
    auto* plot = app.add_subcommand("plot-data", "Plot-ready CSV/SVG from fronts or trajectories");
    std::string plot_front, plot_instance, plot_traj, plot_out = "plot";
    bool plot_svg = false;
    plot->add_option("--front", plot_front, "Front CSV file");
    plot->add_option("--instance", plot_instance, "Instance JSON (normalization bounds)");
    plot->add_option("--trajectory", plot_traj, "Trace CSV from a run with --dump-trajectories");
    plot->add_option("--out", plot_out, "Output prefix");
    plot->add_flag("--svg", plot_svg, "Also emit an SVG scatter");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) {
            if (!gen_all && gen_row == 0) throw std::runtime_error("generate needs --all or --row");
            return cmd_generate(gen_seed, gen_all, gen_row, gen_out);
        }
        if (run->parsed()) {
            ExperimentConfig config;
            if (!run_config_path.empty()) config = load_experiment_config(run_config_path);
            if (!run_instances.empty()) config.instance_paths = run_instances;
            if (!run_algos.empty()) {
                config.algorithms.clear();
                std::istringstream list(run_algos);
                std::string algo;
                while (std::getline(list, algo, ',')) config.algorithms.push_back(algo);
            }
            if (run_runs >= 0) config.runs = run_runs;
            if (run_seed_set) config.base_seed = run_seed_value;
            if (run_nfe >= 0) config.nfe_budget = run_nfe;
            if (run_pop >= 0) config.pop_size = run_pop;
            if (!run_out.empty()) config.out_dir = run_out;
            if (run_workers >= 0) config.workers = run_workers;
            if (run_dump) config.dump_trajectories = true;
            return cmd_run(config);
        }
        if (compare->parsed()) return cmd_compare(cmp_in, cmp_out.empty() ? cmp_in : cmp_out);
        if (plot->parsed()) return cmd_plot_data(plot_front, plot_instance, plot_traj, plot_out, plot_svg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
