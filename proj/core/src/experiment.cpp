#include "mompda/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "mompda/instance_io.hpp"
#include "mompda/metrics.hpp"
#include "mompda/stats.hpp"

namespace mompda {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_file_atomic(const std::string& path, const std::string& content) {
    const fs::path target(path);
    const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string front_csv(std::span<const ObjectiveVector> front) {
    std::vector<ObjectiveVector> sorted(front.begin(), front.end());
    std::sort(sorted.begin(), sorted.end(), [](const ObjectiveVector& a, const ObjectiveVector& b) {
        if (a.robot_count != b.robot_count) return a.robot_count < b.robot_count;
        return a.makespan < b.makespan;
    });
    std::ostringstream out;
    out << "makespan,robot_count\n";
    for (const ObjectiveVector& p : sorted) out << num(p.makespan) << ',' << p.robot_count << '\n';
    return out.str();
}

void write_front_csv(const std::string& path, std::span<const ObjectiveVector> front) {
    write_file_atomic(path, front_csv(front));
}

std::vector<ObjectiveVector> read_front_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open front file: " + path);
    std::string line;
    if (!std::getline(in, line) || line != "makespan,robot_count")
        throw std::runtime_error(path + ": unexpected front CSV header");
    std::vector<ObjectiveVector> front;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error(path + ": malformed row '" + line + "'");
        front.push_back({std::stod(line.substr(0, comma)), std::stoi(line.substr(comma + 1))});
    }
    return front;
}

std::string run_log_csv(std::span<const GenerationLog> log, const RobotBounds& bounds) {
    std::ostringstream out;
    out << "generation,evaluations,ep_size";
    for (int m = bounds.lbm; m <= bounds.ubm; ++m) out << ",best_f1_m" << m;
    out << '\n';
    for (const GenerationLog& row : log) {
        out << row.generation << ',' << row.evaluations << ',' << row.archive_size;
        std::map<int, double> best(row.best_by_budget.begin(), row.best_by_budget.end());
        for (int m = bounds.lbm; m <= bounds.ubm; ++m) {
            out << ',';
            if (auto it = best.find(m); it != best.end()) out << num(it->second);
        }
        out << '\n';
    }
    return out.str();
}

bool is_known_algorithm(const std::string& name) {
    for (const char* known : kAlgorithmNames)
        if (name == known) return true;
    return false;
}

void ExperimentConfig::validate() const {
    if (instance_paths.empty()) throw std::runtime_error("experiment config: no instances given");
    if (algorithms.empty()) throw std::runtime_error("experiment config: no algorithms given");
    for (const std::string& algo : algorithms)
        if (!is_known_algorithm(algo)) throw std::runtime_error("experiment config: unknown algorithm '" + algo + "'");
    if (runs < 1) throw std::runtime_error("experiment config: runs must be >= 1");
    if (pop_size < 2) throw std::runtime_error("experiment config: pop_size must be >= 2");
    if (nfe_budget < 0) throw std::runtime_error("experiment config: nfe must be non-negative");
    if (out_dir.empty()) throw std::runtime_error("experiment config: out dir must not be empty");
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    ExperimentConfig config;
    if (doc.contains("instances")) config.instance_paths = doc["instances"].get<std::vector<std::string>>();
    if (doc.contains("algorithms")) config.algorithms = doc["algorithms"].get<std::vector<std::string>>();
    if (doc.contains("runs")) config.runs = doc["runs"].get<int>();
    if (doc.contains("base_seed")) config.base_seed = doc["base_seed"].get<std::uint64_t>();
    if (doc.contains("pop_size")) config.pop_size = doc["pop_size"].get<int>();
    if (doc.contains("nfe")) config.nfe_budget = doc["nfe"].get<long long>();
    if (doc.contains("out")) config.out_dir = doc["out"].get<std::string>();
    if (doc.contains("workers")) config.workers = doc["workers"].get<int>();
    if (doc.contains("dump_trajectories")) config.dump_trajectories = doc["dump_trajectories"].get<bool>();
    return config;
}

std::uint64_t run_seed(std::uint64_t base_seed, int run_index) {
    return base_seed * 1000000ull + static_cast<std::uint64_t>(run_index);
}

namespace {

ParetoArchive dispatch_algorithm(const std::string& algorithm, const Instance& instance, int pop_size,
                                 long long nfe, std::uint64_t seed, std::vector<GenerationLog>* log) {
    if (algorithm == "hdmoea") {
        EngineConfig config;
        config.pop_size = pop_size;
        config.nfe_budget = nfe;
        return run_hdmoea(instance, config, seed, log);
    }
    BaselineConfig config;
    config.pop_size = pop_size;
    config.nfe_budget = nfe;
    if (algorithm == "nsga2") return run_nsga2(instance, config, seed, log);
    if (algorithm == "moead") return run_moead(instance, config, seed, log);
    if (algorithm == "moead-dra") {
        config.dra = true;
        return run_moead(instance, config, seed, log);
    }
    if (algorithm == "random") return run_random_search(instance, config, seed, log);
    throw std::runtime_error("unknown algorithm '" + algorithm + "'");
}

std::string sanitize(const std::string& s) {
    std::string out = s;
    for (char& c : out)
        if (c == '/' || c == '\\' || c == ' ') c = '-';
    return out;
}

}  // namespace

std::vector<RunRecord> run_experiment(const ExperimentConfig& config) {
    config.validate();
    fs::create_directories(config.out_dir);

    struct LoadedInstance {
        Instance instance;
        RobotBounds bounds;
        std::string path;
    };
    std::vector<LoadedInstance> instances;
    for (const std::string& path : config.instance_paths) {
        LoadedInstance li{load_instance(path), {}, path};
        li.bounds = robot_bounds(li.instance);
        instances.push_back(std::move(li));
    }

    std::vector<RunRecord> records;
    for (const LoadedInstance& li : instances)
        for (const std::string& algo : config.algorithms)
            for (int run = 0; run < config.runs; ++run) {
                RunRecord rec;
                rec.algorithm = algo;
                rec.instance_name = li.instance.name;
                rec.instance_path = li.path;
                rec.run_index = run;
                rec.seed = run_seed(config.base_seed, run);
                rec.lbm = li.bounds.lbm;
                rec.ubm = li.bounds.ubm;
                records.push_back(std::move(rec));
            }

    // Instances are immutable from here on; workers share them freely.
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= records.size()) return;
            RunRecord& rec = records[i];
            try {
                const LoadedInstance* li = nullptr;
                for (const LoadedInstance& candidate : instances)
                    if (candidate.path == rec.instance_path) li = &candidate;
                const std::string stem =
                    sanitize(rec.algorithm) + "_" + sanitize(rec.instance_name) + "_" + std::to_string(rec.run_index);

                const auto t0 = std::chrono::steady_clock::now();
                std::vector<GenerationLog> log;
                ParetoArchive archive =
                    dispatch_algorithm(rec.algorithm, li->instance, config.pop_size, config.nfe_budget, rec.seed, &log);
                rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

                std::vector<ObjectiveVector> front;
                for (const ArchiveEntry& e : archive.entries) front.push_back(e.objectives);
                rec.front_file = (fs::path(config.out_dir) / ("front_" + stem + ".csv")).string();
                write_front_csv(rec.front_file, front);
                rec.log_file = (fs::path(config.out_dir) / ("log_" + stem + ".csv")).string();
                write_file_atomic(rec.log_file, run_log_csv(log, {rec.lbm, rec.ubm}));

                if (config.dump_trajectories && !archive.empty()) {
                    // Re-decode the lowest-makespan entry with tracing on.
                    const ArchiveEntry* best = &archive.entries.front();
                    for (const ArchiveEntry& e : archive.entries)
                        if (e.objectives.makespan < best->objectives.makespan) best = &e;
                    const TravelTimeMatrix travel = build_travel_times(li->instance);
                    std::vector<TraceEvent> trace;
                    decode(li->instance, travel, best->solution, &trace);
                    rec.trace_file = (fs::path(config.out_dir) / ("trace_" + stem + ".csv")).string();
                    write_trace_csv(rec.trace_file, trace);
                }
                rec.ok = true;
            } catch (const std::exception& e) {
                rec.ok = false;
                rec.error = e.what();
            }
        }
    };

    const unsigned hardware = std::max(1u, std::thread::hardware_concurrency());
    const unsigned n_workers =
        config.workers > 0 ? static_cast<unsigned>(config.workers) : std::min<unsigned>(hardware, records.size());
    std::vector<std::thread> pool;
    for (unsigned w = 0; w + 1 < n_workers; ++w) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();

    write_manifest((fs::path(config.out_dir) / "manifest.json").string(), config, records);
    return records;
}

void write_manifest(const std::string& path, const ExperimentConfig& config, std::span<const RunRecord> records) {
    nlohmann::json doc;
    doc["config"] = {{"instances", config.instance_paths}, {"algorithms", config.algorithms},
                     {"runs", config.runs},               {"base_seed", config.base_seed},
                     {"pop_size", config.pop_size},       {"nfe", config.nfe_budget},
                     {"out", config.out_dir},             {"workers", config.workers}};
    doc["runs"] = nlohmann::json::array();
    for (const RunRecord& rec : records) {
        nlohmann::json entry{{"algorithm", rec.algorithm}, {"instance", rec.instance_name},
                             {"instance_path", rec.instance_path}, {"run", rec.run_index},
                             {"seed", rec.seed},           {"lbm", rec.lbm},
                             {"ubm", rec.ubm},             {"wall_seconds", rec.wall_seconds},
                             {"front", rec.front_file},    {"log", rec.log_file},
                             {"ok", rec.ok}};
        if (!rec.trace_file.empty()) entry["trace"] = rec.trace_file;
        if (!rec.ok) entry["error"] = rec.error;
        doc["runs"].push_back(std::move(entry));
    }
    write_file_atomic(path, doc.dump(2) + "\n");
}

namespace {

struct LoadedRun {
    std::string algorithm;
    std::uint64_t seed;
    std::vector<ObjectiveVector> front;
};

double sample_mean(std::span<const double> xs) {
    double total = 0.0;
    for (double x : xs) total += x;
    return total / static_cast<double>(xs.size());
}

double sample_std(std::span<const double> xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double total = 0.0;
    for (double x : xs) total += (x - mean) * (x - mean);
    return std::sqrt(total / static_cast<double>(xs.size() - 1));
}

}  // namespace

CompareReport compare_runs(const std::string& results_dir) {
    const std::string manifest_path = (fs::path(results_dir) / "manifest.json").string();
    std::ifstream in(manifest_path);
    if (!in) throw std::runtime_error("cannot open manifest: " + manifest_path);
    nlohmann::json doc = nlohmann::json::parse(in);

    // instance -> bounds, instance -> runs
    std::map<std::string, RobotBounds> bounds;
    std::map<std::string, std::vector<LoadedRun>> by_instance;
    for (const nlohmann::json& entry : doc["runs"]) {
        if (!entry["ok"].get<bool>()) continue;
        const std::string instance = entry["instance"].get<std::string>();
        bounds[instance] = {entry["lbm"].get<int>(), entry["ubm"].get<int>()};
        by_instance[instance].push_back({entry["algorithm"].get<std::string>(), entry["seed"].get<std::uint64_t>(),
                                         read_front_csv(entry["front"].get<std::string>())});
    }
    if (by_instance.empty()) throw std::runtime_error("manifest has no successful runs");

    CompareReport report;
    for (const auto& [instance, runs] : by_instance) {
        std::map<std::string, int> run_counts;
        for (const LoadedRun& run : runs) ++run_counts[run.algorithm];
        int expected = -1;
        for (const auto& [algo, count] : run_counts) {
            if (expected < 0) expected = count;
            if (count != expected)
                throw std::runtime_error("instance '" + instance + "': algorithm '" + algo +
                                         "' has a mismatched run count");
        }

        std::vector<std::vector<ObjectiveVector>> archives;
        for (const LoadedRun& run : runs) archives.push_back(run.front);
        const std::vector<ObjectiveVector> reference_raw = reference_front(archives);
        std::vector<NormalizedPoint> reference;
        for (const ObjectiveVector& p : reference_raw)
            reference.push_back(clamp_to_indicator_box(normalize(p, bounds[instance])));

        std::map<std::string, std::vector<double>> hv_samples, igd_samples;
        for (const LoadedRun& run : runs) {
            std::vector<NormalizedPoint> points;
            for (const ObjectiveVector& p : run.front)
                points.push_back(clamp_to_indicator_box(normalize(p, bounds[instance])));
            IndicatorRow row;
            row.algorithm = run.algorithm;
            row.instance = instance;
            row.seed = run.seed;
            row.hv = hv(points, kReferencePoint);
            row.igd = igd(reference, points);
            hv_samples[run.algorithm].push_back(row.hv);
            igd_samples[run.algorithm].push_back(row.igd);
            report.indicators.push_back(std::move(row));
        }

        for (const auto& [algo, hvs] : hv_samples) {
            SummaryRow row;
            row.algorithm = algo;
            row.instance = instance;
            row.runs = static_cast<int>(hvs.size());
            row.hv_mean = sample_mean(hvs);
            row.hv_std = sample_std(hvs, row.hv_mean);
            const std::vector<double>& igds = igd_samples[algo];
            row.igd_mean = sample_mean(igds);
            row.igd_std = sample_std(igds, row.igd_mean);
            report.summary.push_back(std::move(row));
        }

        std::vector<std::string> algos;
        for (const auto& [algo, unused] : hv_samples) algos.push_back(algo);
        const int pairs = static_cast<int>(algos.size() * (algos.size() - 1) / 2);
        for (std::size_t a = 0; a < algos.size(); ++a) {
            for (std::size_t b = a + 1; b < algos.size(); ++b) {
                for (const char* metric : {"hv", "igd"}) {
                    const auto& samples = std::string(metric) == "hv" ? hv_samples : igd_samples;
                    WilcoxonRow row;
                    row.instance = instance;
                    row.metric = metric;
                    row.algorithm_a = algos[a];
                    row.algorithm_b = algos[b];
                    row.p_raw = wilcoxon_rank_sum(samples.at(algos[a]), samples.at(algos[b]));
                    row.p_bonferroni = bonferroni(row.p_raw, std::max(1, pairs));
                    row.significant = row.p_bonferroni < 0.05;
                    report.tests.push_back(std::move(row));
                }
            }
        }
    }
    return report;
}

void write_compare_csvs(const std::string& out_dir, const CompareReport& report) {
    fs::create_directories(out_dir);
    {
        std::ostringstream out;
        out << "algorithm,instance,seed,hv,igd\n";
        for (const IndicatorRow& row : report.indicators)
            out << row.algorithm << ',' << row.instance << ',' << row.seed << ',' << num(row.hv) << ','
                << num(row.igd) << '\n';
        write_file_atomic((fs::path(out_dir) / "indicators.csv").string(), out.str());
    }
    {
        std::ostringstream out;
        out << "algorithm,instance,runs,hv_mean,hv_std,igd_mean,igd_std\n";
        for (const SummaryRow& row : report.summary)
            out << row.algorithm << ',' << row.instance << ',' << row.runs << ',' << num(row.hv_mean) << ','
                << num(row.hv_std) << ',' << num(row.igd_mean) << ',' << num(row.igd_std) << '\n';
        write_file_atomic((fs::path(out_dir) / "summary.csv").string(), out.str());
    }
    {
        std::ostringstream out;
        out << "instance,metric,algorithm_a,algorithm_b,p_raw,p_bonferroni,significant_5pct\n";
        for (const WilcoxonRow& row : report.tests)
            out << row.instance << ',' << row.metric << ',' << row.algorithm_a << ',' << row.algorithm_b << ','
                << num(row.p_raw) << ',' << num(row.p_bonferroni) << ',' << (row.significant ? 1 : 0) << '\n';
        write_file_atomic((fs::path(out_dir) / "wilcoxon.csv").string(), out.str());
    }
}

std::string scatter_csv(std::span<const ObjectiveVector> front, const RobotBounds& bounds) {
    std::ostringstream out;
    out << "makespan,robot_count,ob1,ob2\n";
    for (const ObjectiveVector& p : front) {
        const NormalizedPoint n = clamp_to_indicator_box(normalize(p, bounds));
        out << num(p.makespan) << ',' << p.robot_count << ',' << num(n.ob1) << ',' << num(n.ob2) << '\n';
    }
    return out.str();
}

std::string scatter_svg(std::span<const ObjectiveVector> front, const RobotBounds& bounds) {
    constexpr int size = 440;  // 1.1 units at 400 px per unit
    constexpr double scale = 400.0;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\">\n";
    out << "  <rect width=\"" << size << "\" height=\"" << size << "\" fill=\"white\" stroke=\"black\"/>\n";
    for (const ObjectiveVector& p : front) {
        const NormalizedPoint n = clamp_to_indicator_box(normalize(p, bounds));
        const double x = n.ob1 * scale;
        const double y = size - n.ob2 * scale;
        out << "  <circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"4\" fill=\"steelblue\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string timeline_csv(std::span<const TraceEvent> events) {
    std::ostringstream out;
    out << "robot,activity,task,start,end\n";
    // depart -> arrive is a travel segment, arrive -> complete an execution
    // segment. Events arrive in simulation order per robot.
    std::map<int, const TraceEvent*> last_depart, last_arrive;
    for (const TraceEvent& e : events) {
        switch (e.kind) {
            case TraceEvent::Kind::Depart:
                last_depart[e.robot] = &e;
                break;
            case TraceEvent::Kind::Arrive:
                if (auto it = last_depart.find(e.robot); it != last_depart.end() && it->second->task == e.task) {
                    out << e.robot << ",travel," << e.task << ',' << num(it->second->time) << ',' << num(e.time)
                        << '\n';
                    last_depart.erase(it);
                }
                last_arrive[e.robot] = &e;
                break;
            case TraceEvent::Kind::Complete:
                if (auto it = last_arrive.find(e.robot); it != last_arrive.end() && it->second->task == e.task) {
                    out << e.robot << ",execute," << e.task << ',' << num(it->second->time) << ',' << num(e.time)
                        << '\n';
                    last_arrive.erase(it);
                }
                break;
        }
    }
    return out.str();
}

std::vector<TraceEvent> read_trace_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace file: " + path);
    std::string line;
    if (!std::getline(in, line) || line != "robot,event_type,task,time")
        throw std::runtime_error(path + ": unexpected trace CSV header");
    std::vector<TraceEvent> events;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string robot, kind, task, time;
        if (!std::getline(row, robot, ',') || !std::getline(row, kind, ',') || !std::getline(row, task, ',') ||
            !std::getline(row, time, ','))
            throw std::runtime_error(path + ": malformed row '" + line + "'");
        TraceEvent e;
        e.robot = std::stoi(robot);
        e.task = std::stoi(task);
        e.time = std::stod(time);
        if (kind == "depart")
            e.kind = TraceEvent::Kind::Depart;
        else if (kind == "arrive")
            e.kind = TraceEvent::Kind::Arrive;
        else if (kind == "complete")
            e.kind = TraceEvent::Kind::Complete;
        else
            throw std::runtime_error(path + ": unknown event type '" + kind + "'");
        events.push_back(e);
    }
    return events;
}

}  // namespace mompda
