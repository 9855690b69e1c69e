#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "wasep/field.hpp"
#include "wasep/process.hpp"

namespace wasep {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// One test function paired with the density field. `kind` is ramp or
/// smooth_ramp (parameter l) or gaussian_bump (center, width).
struct FieldTestSpec {
    std::string kind;
    double l = 1.0;
    double center = 0.0;
    double width = 1.0;

    TestFunction make() const;
    std::string label() const;
};

struct ExperimentConfig {
    int n = 200;
    double alpha = 1.0;
    double beta = 2.0;
    double rho = 0.3;
    double horizon = 1.0;
    std::optional<std::int64_t> ring_size;

    int replicas = 1;
    std::uint64_t master_seed = 0;
    std::vector<double> sample_times;

    bool observe_current = true;
    bool observe_tagged = false;
    bool observe_field = false;
    std::vector<FieldTestSpec> field_test_functions;

    double a_n_exponent = 0.75;
    bool ring_doubling_check = false;
    std::string output_path;

    ProcessParams process() const;
    /// Throws ConfigError on any violated invariant.
    void validate() const;
};

/// Strict parse: unknown keys and wrong types are ConfigErrors. The result
/// is validated.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentConfig& config);

/// Worker threads: WASEP_WORKERS when set to a positive integer, otherwise
/// the number of logical cores (at least 1).
unsigned worker_count();

}  // namespace wasep
