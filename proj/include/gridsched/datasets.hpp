#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gridsched/error.hpp"
#include "gridsched/model.hpp"

namespace gridsched {

class MissingFile : public Error {
  public:
    using Error::Error;
};

// Not parseable as JSON (truncated, garbage).
class MalformedDocument : public Error {
  public:
    using Error::Error;
};

// Valid JSON that does not describe a valid instance.
class SchemaViolation : public Error {
  public:
    using Error::Error;
};

struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

struct WindowSpec {
    Range start_time;  // STR drawn from here
    Range end_time;    // ETR drawn from here; must lie above start_time.hi
};

struct GeneratorSpec {
    std::size_t resource_count = 1;
    std::size_t job_count = 1;
    Range speed_range{1.0, 10.0};
    Range length_range{10.0, 100.0};
    std::optional<WindowSpec> window;
    std::uint64_t seed = 0;

    void validate() const;
};

// Speeds uniform in speed_range rounded to 2 decimals, lengths uniform in
// length_range rounded to integers, windows (if any) rounded to 2 decimals.
GridInstance generate_instance(const GeneratorSpec& spec);

struct NamedInstance {
    std::string name;   // file stem, e.g. "r3_j13"
    std::string label;  // table header, e.g. "(3,13)"
    GeneratorSpec spec;
    GridInstance instance;
};

// The four benchmark shapes (3,13), (5,100), (8,60), (10,50) from fixed seeds.
std::vector<NamedInstance> fixture_suite();

// Canonical JSON text of an instance; what save_instance writes.
std::string to_json_text(const GridInstance& instance);
GridInstance from_json_text(const std::string& text);

// JSON text for the fixture seed manifest.
std::string fixture_manifest_text(const std::vector<NamedInstance>& suite);

void save_instance(const GridInstance& instance, const std::filesystem::path& path);
GridInstance load_instance(const std::filesystem::path& path);

}  // namespace gridsched
