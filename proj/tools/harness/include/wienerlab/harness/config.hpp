#pragma once

#include <wienerlab/drift.hpp>

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace wienerlab::harness {

/// One scenario: a drift, a grid size, a path budget, a seed and the checks
/// to run. The JSON keys are "scenario", "drift", "n", "N", "seed",
/// "checks", "tolerances", "options", "output_dir" and "record_timing".
struct ScenarioConfig {
    std::string scenario;
    DriftSpec drift;
    std::size_t steps = 256;
    std::size_t paths = 1000;
    std::uint64_t seed = 1;
    std::vector<std::string> checks;
    /// Per-check threshold overrides keyed by check id, plus "z", the
    /// standard-error multiple used by Monte Carlo comparisons.
    std::map<std::string, double> tolerances;
    /// Check parameters such as "tau", "kappa", "p" or "pathwise_paths".
    std::map<std::string, double> options;
    std::string output_dir = ".";
    /// wall_ms is reported as 0 unless set, which keeps reports byte-stable.
    bool record_timing = false;

    bool operator==(const ScenarioConfig&) const = default;
};

/// Every problem found in a configuration, one line each.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    std::vector<std::string> problems_;
};

nlohmann::json to_json(const DriftSpec& spec);

/// Parses {"type": ..., "params": {...}, "inner": [...]}. Structural
/// problems are appended to problems with where as the location prefix.
DriftSpec drift_spec_from_json(const nlohmann::json& j, const std::string& where,
                               std::vector<std::string>& problems);

nlohmann::json to_json(const ScenarioConfig& config);

/// Validates everything, including that the drift can be built and that
/// the grid suits the requested checks. Throws ConfigError.
ScenarioConfig parse_config(const nlohmann::json& j);

/// Reads and parses a file. Throws ConfigError for unreadable files and
/// malformed JSON as well.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Re-validates a config after command-line overrides.
void validate(const ScenarioConfig& config);

} // namespace wienerlab::harness
