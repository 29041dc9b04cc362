#pragma once

#include <wienerlab/drift.hpp>
#include <wienerlab/grid.hpp>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wienerlab::harness {

enum class CheckStatus { pass, fail, info };
std::string to_string(CheckStatus s);

inline constexpr double kNotApplicable = std::numeric_limits<double>::quiet_NaN();

/// One report row. A check fails exactly when observed exceeds threshold;
/// rows without a threshold are informational. Columns that do not apply
/// hold NaN and are written empty.
struct CheckResult {
    std::string check_id;
    CheckStatus status = CheckStatus::info;
    double estimate = kNotApplicable;
    double std_error = kNotApplicable;
    double threshold = kNotApplicable;
    double observed = kNotApplicable;
    std::size_t n = 0;
    std::size_t N = 0;
    std::uint64_t seed = 0;
    double wall_ms = 0.0;
    std::string note;
};

/// Pass when observed <= threshold, fail otherwise (NaN observed fails).
CheckStatus compare(double observed, double threshold);

/// Check ids accepted in a scenario's "checks" list, in run order.
const std::vector<std::string>& supported_checks();

/// Grid constraints of a check (e.g. evaluation times on the grid);
/// a message when steps does not satisfy them.
std::optional<std::string> grid_problem(const std::string& check, std::size_t steps);

struct CheckContext {
    DriftPtr drift;
    TimeGrid grid;
    std::size_t paths;
    std::uint64_t seed;
    std::map<std::string, double> tolerances;
    std::map<std::string, double> options;

    double option(const std::string& key, double fallback) const;
    double tolerance(const std::string& key, double fallback) const;
    /// Multiple of the standard error allowed by Monte Carlo comparisons.
    double z() const { return tolerance("z", 3.0); }
    /// Paths for pathwise (non-averaging) checks: min(N, pathwise_paths).
    std::size_t pathwise_paths() const;
};

/// Runs one check id. Multi-row checks (e.g. lsi) return one row per case.
/// Throws std::invalid_argument for unknown ids.
std::vector<CheckResult> run_check(const std::string& id, const CheckContext& ctx);

} // namespace wienerlab::harness
