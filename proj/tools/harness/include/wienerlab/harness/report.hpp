#pragma once

#include "wienerlab/harness/checks.hpp"
#include "wienerlab/harness/config.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wienerlab::harness {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// "check_id,status,estimate,stderr,threshold,observed,n,N,seed,wall_ms"
std::string csv_header();

/// Header plus one row per result. Numbers use 17 significant digits and
/// NaN columns are left empty.
void write_csv(std::ostream& out, const std::vector<CheckResult>& results);

/// Array of result objects carrying every CSV field plus "note".
nlohmann::json results_json(const std::vector<CheckResult>& results);

/// {"config": resolved config, "results": results_json(results)}
nlohmann::json report_json(const std::vector<CheckResult>& results,
                           const ScenarioConfig& config);

struct ReportPaths {
    std::filesystem::path csv;
    std::filesystem::path json;
};

/// Writes <dir>/<stem>.csv and <dir>/<stem>.json, creating dir if needed.
/// Throws IoError when the directory or files cannot be written.
ReportPaths write_reports(const std::filesystem::path& dir, const std::string& stem,
                          const std::vector<CheckResult>& results, const nlohmann::json& document);

} // namespace wienerlab::harness
