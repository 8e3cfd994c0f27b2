#include "mompda/instance_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mompda {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

const nlohmann::json& field(const nlohmann::json& doc, const char* key, const std::string& path) {
    auto it = doc.find(key);
    if (it == doc.end()) fail(path, std::string("missing field \"") + key + "\"");
    return *it;
}

double number_field(const nlohmann::json& doc, const char* key, const std::string& path) {
    const nlohmann::json& value = field(doc, key, path);
    if (!value.is_number()) fail(path, std::string("field \"") + key + "\" must be a number");
    return value.get<double>();
}

}  // namespace

void save_instance(const Instance& instance, const std::string& path) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"name\": \"" << escape(instance.name) << "\",\n";
    out << "  \"depot\": [" << num(instance.depot.x) << ", " << num(instance.depot.y) << "],\n";
    out << "  \"tasks\": [\n";
    for (int j = 0; j < instance.task_count(); ++j) {
        out << "    {\"pos\": [" << num(instance.task_positions[j].x) << ", " << num(instance.task_positions[j].y)
            << "], \"q0\": " << num(instance.initial_demands[j])
            << ", \"alpha\": " << num(instance.increment_rates[j]) << "}";
        out << (j + 1 < instance.task_count() ? ",\n" : "\n");
    }
    out << "  ],\n";
    out << "  \"beta\": " << num(instance.robot_ability) << ",\n";
    out << "  \"speed\": " << num(instance.robot_speed) << ",\n";
    out << "  \"seed\": " << instance.seed << "\n";
    out << "}\n";

    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open for writing: " + path);
    file << out.str();
    if (!file) throw std::runtime_error("write failed: " + path);
}

Instance load_instance(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) fail(path, "cannot open");

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(file);
    } catch (const nlohmann::json::parse_error& e) {
        fail(path, e.what());
    }
    if (!doc.is_object()) fail(path, "top-level value must be an object");

    Instance instance;
    const nlohmann::json& name = field(doc, "name", path);
    if (!name.is_string()) fail(path, "field \"name\" must be a string");
    instance.name = name.get<std::string>();

    const nlohmann::json& depot = field(doc, "depot", path);
    if (!depot.is_array() || depot.size() != 2) fail(path, "field \"depot\" must be [x, y]");
    instance.depot = {depot[0].get<double>(), depot[1].get<double>()};

    const nlohmann::json& tasks = field(doc, "tasks", path);
    if (!tasks.is_array() || tasks.empty()) fail(path, "field \"tasks\" must be a non-empty array");
    for (const nlohmann::json& task : tasks) {
        if (!task.is_object()) fail(path, "entries of \"tasks\" must be objects");
        const nlohmann::json& pos = field(task, "pos", path);
        if (!pos.is_array() || pos.size() != 2) fail(path, "field \"pos\" must be [x, y]");
        instance.task_positions.push_back({pos[0].get<double>(), pos[1].get<double>()});
        instance.initial_demands.push_back(number_field(task, "q0", path));
        instance.increment_rates.push_back(number_field(task, "alpha", path));
    }

    instance.robot_ability = number_field(doc, "beta", path);
    instance.robot_speed = number_field(doc, "speed", path);
    const nlohmann::json& seed = field(doc, "seed", path);
    if (!seed.is_number_integer() && !seed.is_number_unsigned()) fail(path, "field \"seed\" must be an integer");
    instance.seed = seed.get<std::uint64_t>();

    try {
        instance.validate();
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    return instance;
}

}  // namespace mompda
