#include <doctest.h>

#include <stdexcept>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mompda/experiment.hpp"
#include "mompda/generator.hpp"
#include "mompda/instance_io.hpp"

using namespace mompda;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("mompda_exp_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string write_tiny_instance(const fs::path& dir) {
    InstanceSpec spec = benchmark_table()[0].spec;  // 5 tasks
    spec.seed = 11;
    const Instance instance = generate_instance(spec);
    const std::string path = (dir / (instance.name + ".json")).string();
    save_instance(instance, path);
    return path;
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("front CSV round-trips and stays sorted") {
    const std::vector<ObjectiveVector> front{{10.0, 3}, {99.5, 1}, {42.25, 2}};
    const std::string csv = front_csv(front);
    CHECK(csv == "makespan,robot_count\n99.5,1\n42.25,2\n10,3\n");

    const fs::path dir = temp_dir("front");
    const std::string path = (dir / "front.csv").string();
    write_front_csv(path, front);
    const std::vector<ObjectiveVector> loaded = read_front_csv(path);
    REQUIRE(loaded.size() == 3);
    CHECK(loaded[0] == ObjectiveVector{99.5, 1});
    CHECK(loaded[2] == ObjectiveVector{10.0, 3});
    fs::remove_all(dir);
}

TEST_CASE("run log CSV carries one column per fleet size") {
    std::vector<GenerationLog> log{{1, 120, 2, {{2, 50.0}, {4, 30.0}}}};
    const std::string csv = run_log_csv(log, {2, 4});
    std::istringstream lines(csv);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header == "generation,evaluations,ep_size,best_f1_m2,best_f1_m3,best_f1_m4");
    CHECK(row == "1,120,2,50,,30");
}

TEST_CASE("scatter CSV and SVG have one mark per point") {
    const RobotBounds bounds{1, 3};
    const std::vector<ObjectiveVector> front{{150.0, 1}, {120.0, 2}, {101.0, 3}};
    const std::string csv = scatter_csv(front, bounds);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + 3 rows
    const std::string svg = scatter_svg(front, bounds);
    std::size_t circles = 0, at = 0;
    while ((at = svg.find("<circle", at)) != std::string::npos) {
        ++circles;
        at += 7;
    }
    CHECK(circles == 3);
}

TEST_CASE("timeline CSV pairs departures with arrivals and completions") {
    std::vector<TraceEvent> events{
        {0, TraceEvent::Kind::Depart, 1, 0.0},  {0, TraceEvent::Kind::Arrive, 1, 1.0},
        {0, TraceEvent::Kind::Complete, 1, 2.0}, {0, TraceEvent::Kind::Depart, 2, 2.0},
        {0, TraceEvent::Kind::Arrive, 2, 3.0},  {0, TraceEvent::Kind::Complete, 2, 9.0},
    };
    const std::string csv = timeline_csv(events);
    CHECK(csv ==
          "robot,activity,task,start,end\n"
          "0,travel,1,0,1\n"
          "0,execute,1,1,2\n"
          "0,travel,2,2,3\n"
          "0,execute,2,3,9\n");
}

TEST_CASE("experiment config validation") {
    ExperimentConfig config;
    CHECK_THROWS_AS(config.validate(), std::runtime_error);  // no instances
    config.instance_paths = {"x.json"};
    config.algorithms = {"quantum"};
    CHECK_THROWS_WITH_AS(config.validate(), doctest::Contains("unknown algorithm"), std::runtime_error);
    config.algorithms = {"hdmoea"};
    config.runs = 0;
    CHECK_THROWS_AS(config.validate(), std::runtime_error);
}

TEST_CASE("run_experiment produces artifacts, manifest and a comparable report") {
    const fs::path dir = temp_dir("run");
    const std::string instance_path = write_tiny_instance(dir);

    ExperimentConfig config;
    config.instance_paths = {instance_path};
    config.algorithms = {"hdmoea", "random"};
    config.runs = 4;
    config.base_seed = 3;
    config.pop_size = 8;
    config.nfe_budget = 250;
    config.out_dir = (dir / "results").string();
    config.workers = 2;
    config.dump_trajectories = true;

    const std::vector<RunRecord> records = run_experiment(config);
    REQUIRE(records.size() == 8);
    for (const RunRecord& rec : records) {
        CHECK(rec.ok);
        CHECK(fs::exists(rec.front_file));
        CHECK(fs::exists(rec.log_file));
        CHECK(rec.seed == run_seed(config.base_seed, rec.run_index));
        const std::vector<ObjectiveVector> front = read_front_csv(rec.front_file);
        for (std::size_t i = 1; i < front.size(); ++i) {
            CHECK(front[i].robot_count > front[i - 1].robot_count);
            CHECK(front[i].makespan < front[i - 1].makespan);
        }
    }
    CHECK(fs::exists(fs::path(config.out_dir) / "manifest.json"));

    // Same config, fresh directory: artifacts must be byte-identical.
    ExperimentConfig repeat = config;
    repeat.out_dir = (dir / "results2").string();
    const std::vector<RunRecord> records2 = run_experiment(repeat);
    for (std::size_t i = 0; i < records.size(); ++i)
        CHECK(slurp(records[i].front_file) == slurp(records2[i].front_file));

    const CompareReport report = compare_runs(config.out_dir);
    CHECK(report.indicators.size() == 8);
    CHECK(report.summary.size() == 2);
    CHECK(report.tests.size() == 2);  // hv and igd for the single pair
    for (const WilcoxonRow& row : report.tests) {
        CHECK(row.p_raw >= 0.0);
        CHECK(row.p_raw <= 1.0);
        CHECK(row.p_bonferroni >= row.p_raw);
    }

    write_compare_csvs(config.out_dir, report);
    CHECK(fs::exists(fs::path(config.out_dir) / "indicators.csv"));
    CHECK(fs::exists(fs::path(config.out_dir) / "summary.csv"));
    CHECK(fs::exists(fs::path(config.out_dir) / "wilcoxon.csv"));
    const std::string indicators = slurp(fs::path(config.out_dir) / "indicators.csv");
    CHECK(std::count(indicators.begin(), indicators.end(), '\n') == 9);

    fs::remove_all(dir);
}

TEST_CASE("compare rejects mismatched run counts") {
    const fs::path dir = temp_dir("mismatch");
    const std::vector<ObjectiveVector> front{{150.0, 1}};
    write_front_csv((dir / "f0.csv").string(), front);
    write_front_csv((dir / "f1.csv").string(), front);
    write_front_csv((dir / "f2.csv").string(), front);

    std::ofstream manifest(dir / "manifest.json");
    manifest << R"({"config":{},"runs":[)"
             << R"({"algorithm":"a","instance":"i","instance_path":"p","run":0,"seed":1,"lbm":1,"ubm":2,)"
             << R"("wall_seconds":0,"front":")" << (dir / "f0.csv").string() << R"(","log":"","ok":true},)"
             << R"({"algorithm":"a","instance":"i","instance_path":"p","run":1,"seed":2,"lbm":1,"ubm":2,)"
             << R"("wall_seconds":0,"front":")" << (dir / "f1.csv").string() << R"(","log":"","ok":true},)"
             << R"({"algorithm":"b","instance":"i","instance_path":"p","run":0,"seed":1,"lbm":1,"ubm":2,)"
             << R"("wall_seconds":0,"front":")" << (dir / "f2.csv").string() << R"(","log":"","ok":true}]})";
    manifest.close();

    CHECK_THROWS_WITH_AS(compare_runs(dir.string()), doctest::Contains("mismatched run count"), std::runtime_error);
    fs::remove_all(dir);
}

TEST_CASE("per-run failures are isolated") {
    const fs::path dir = temp_dir("isolated");
    const std::string good = write_tiny_instance(dir);
    const fs::path bad = dir / "broken.json";
    std::ofstream(bad) << "{ not json";

    ExperimentConfig config;
    config.instance_paths = {good};
    config.algorithms = {"random"};
    config.runs = 1;
    config.nfe_budget = 50;
    config.pop_size = 5;
    config.out_dir = (dir / "results").string();

    // A bad instance path fails at load time, before any runs start.
    ExperimentConfig broken = config;
    broken.instance_paths = {bad.string()};
    CHECK_THROWS_AS(run_experiment(broken), std::runtime_error);

    // Good instances still complete.
    const std::vector<RunRecord> records = run_experiment(config);
    REQUIRE(records.size() == 1);
    CHECK(records[0].ok);
    fs::remove_all(dir);
}

}  // TEST_SUITE
