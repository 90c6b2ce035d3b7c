#include "gridsched/datasets.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "gridsched/rng.hpp"

namespace gridsched {

namespace {

using Json = nlohmann::ordered_json;

double round_to(double x, double scale) { return std::round(x * scale) / scale; }

void check_range(const Range& r, const char* what) {
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi) {
        throw ConfigError(std::string(what) + " range must satisfy lo <= hi");
    }
}

// Shortest decimal text that parses back to exactly the same double.
std::string decimal(double x) {
    if (std::isinf(x)) return "inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

double parse_decimal(const Json& node, const char* field, bool allow_inf) {
    if (!node.is_string()) {
        throw SchemaViolation(std::string("field '") + field + "' must be a decimal string");
    }
    const auto& text = node.get_ref<const std::string&>();
    if (allow_inf && text == "inf") return kUnbounded;
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw SchemaViolation(std::string("field '") + field + "' is not a decimal: " + text);
    }
    return value;
}

const Json& require(const Json& obj, const char* field) {
    if (!obj.is_object() || !obj.contains(field)) {
        throw SchemaViolation(std::string("missing field '") + field + "'");
    }
    return obj.at(field);
}

std::size_t parse_id(const Json& obj) {
    const Json& id = require(obj, "id");
    if (!id.is_number_unsigned()) throw SchemaViolation("field 'id' must be a non-negative integer");
    return id.get<std::size_t>();
}

struct FixtureDef {
    const char* name;
    const char* label;
    std::size_t resources;
    std::size_t jobs;
    std::uint64_t seed;
};

// Published seeds; changing any of these changes the committed fixtures.
constexpr FixtureDef kFixtures[] = {
    {"r3_j13", "(3,13)", 3, 13, 313},
    {"r5_j100", "(5,100)", 5, 100, 5100},
    {"r8_j60", "(8,60)", 8, 60, 860},
    {"r10_j50", "(10,50)", 10, 50, 1050},
};

}  // namespace

void GeneratorSpec::validate() const {
    if (resource_count < 1) throw ConfigError("resource count must be at least 1");
    if (job_count < 1) throw ConfigError("job count must be at least 1");
    check_range(speed_range, "speed");
    check_range(length_range, "length");
    if (round_to(speed_range.lo, 100.0) <= 0.0) throw ConfigError("speeds must round to > 0");
    if (std::round(length_range.lo) <= 0.0) throw ConfigError("lengths must round to > 0");
    if (window) {
        check_range(window->start_time, "start time");
        check_range(window->end_time, "end time");
        if (window->start_time.lo < 0.0) throw ConfigError("start times must be non-negative");
        if (round_to(window->end_time.lo, 100.0) <= round_to(window->start_time.hi, 100.0)) {
            throw ConfigError("end time range must lie above the start time range");
        }
    }
}

GridInstance generate_instance(const GeneratorSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    std::vector<Resource> resources(spec.resource_count);
    for (std::size_t i = 0; i < resources.size(); ++i) {
        resources[i].id = i;
        resources[i].speed =
            round_to(rng.uniform(spec.speed_range.lo, spec.speed_range.hi), 100.0);
    }
    std::vector<Job> jobs(spec.job_count);
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        jobs[j].id = j;
        jobs[j].length = std::round(rng.uniform(spec.length_range.lo, spec.length_range.hi));
    }
    if (spec.window) {
        for (auto& r : resources) {
            r.start_time = round_to(
                rng.uniform(spec.window->start_time.lo, spec.window->start_time.hi), 100.0);
            r.end_time =
                round_to(rng.uniform(spec.window->end_time.lo, spec.window->end_time.hi), 100.0);
        }
    }
    return GridInstance(std::move(resources), std::move(jobs));
}

std::vector<NamedInstance> fixture_suite() {
    std::vector<NamedInstance> suite;
    for (const auto& def : kFixtures) {
        GeneratorSpec spec;
        spec.resource_count = def.resources;
        spec.job_count = def.jobs;
        spec.seed = def.seed;
        suite.push_back({def.name, def.label, spec, generate_instance(spec)});
    }
    return suite;
}

std::string to_json_text(const GridInstance& instance) {
    Json doc;
    doc["resources"] = Json::array();
    for (const auto& r : instance.resources()) {
        Json node;
        node["id"] = r.id;
        node["speed"] = decimal(r.speed);
        node["start_time"] = decimal(r.start_time);
        node["end_time"] = decimal(r.end_time);
        doc["resources"].push_back(std::move(node));
    }
    doc["jobs"] = Json::array();
    for (const auto& j : instance.jobs()) {
        Json node;
        node["id"] = j.id;
        node["length"] = decimal(j.length);
        doc["jobs"].push_back(std::move(node));
    }
    return doc.dump(2) + "\n";
}

GridInstance from_json_text(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw MalformedDocument(e.what());
    }
    const Json& resources = require(doc, "resources");
    const Json& jobs = require(doc, "jobs");
    if (!resources.is_array() || !jobs.is_array()) {
        throw SchemaViolation("'resources' and 'jobs' must be arrays");
    }

    std::vector<Resource> rs;
    for (const auto& node : resources) {
        Resource r;
        r.id = parse_id(node);
        r.speed = parse_decimal(require(node, "speed"), "speed", false);
        r.start_time = parse_decimal(require(node, "start_time"), "start_time", false);
        r.end_time = parse_decimal(require(node, "end_time"), "end_time", true);
        rs.push_back(r);
    }
    std::vector<Job> js;
    for (const auto& node : jobs) {
        Job j;
        j.id = parse_id(node);
        j.length = parse_decimal(require(node, "length"), "length", false);
        js.push_back(j);
    }
    try {
        return GridInstance(std::move(rs), std::move(js));
    } catch (const ConfigError& e) {
        throw SchemaViolation(e.what());
    }
}

std::string fixture_manifest_text(const std::vector<NamedInstance>& suite) {
    Json doc;
    doc["fixtures"] = Json::array();
    for (const auto& f : suite) {
        Json node;
        node["file"] = f.name + ".json";
        node["label"] = f.label;
        node["resources"] = f.spec.resource_count;
        node["jobs"] = f.spec.job_count;
        node["seed"] = f.spec.seed;
        node["speed_range"] = {decimal(f.spec.speed_range.lo), decimal(f.spec.speed_range.hi)};
        node["length_range"] = {decimal(f.spec.length_range.lo), decimal(f.spec.length_range.hi)};
        doc["fixtures"].push_back(std::move(node));
    }
    return doc.dump(2) + "\n";
}

void save_instance(const GridInstance& instance, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw MissingFile("cannot write " + path.string());
    out << to_json_text(instance);
    if (!out) throw MissingFile("failed writing " + path.string());
}

GridInstance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingFile("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

}  // namespace gridsched
