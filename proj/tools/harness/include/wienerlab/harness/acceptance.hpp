#pragma once

#include "wienerlab/harness/checks.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace wienerlab::harness {

/// Tolerances of the acceptance suite. The defaults are the pinned values;
/// zero() forces every tolerance to 0, which must make the suite fail.
struct AcceptanceTolerances {
    double det2 = 1e-8;
    double adaptedness = 1e-8;
    double z = 3.0;                 ///< standard-error multiple for MC comparisons
    double roundtrip = 1e-10;
    double inverse_drift = 1e-10;
    double rho_identity = 1e-8;
    double carleman_relative = 1e-10;
    double hs_dt_multiple = 2.0;    ///< HS calibration band, in units of dt
    double picard = 1e-8;
    std::size_t picard_max_iter = 50;
    double hs_variation = 0.10;     ///< relative spread of ||grad u||_2 across n
    double localization = 1e-10;
    double cross_resolution_miss = 0.10; ///< allowed share of non-decreasing paths

    static AcceptanceTolerances zero();
};

struct AcceptanceOptions {
    std::uint64_t seed = 1;
    AcceptanceTolerances tolerances;
};

struct CriterionResult {
    int number = 0;
    std::string id;
    bool passed = false;
    double observed = 0.0;
    double threshold = 0.0;
    std::string detail;
    std::size_t n = 0;
    std::size_t N = 0;
    double wall_ms = 0.0;
};

/// Ids of the fifteen criteria in order.
const std::vector<std::string>& acceptance_ids();

/// Runs every criterion at its stated scale. on_result, when set, is called
/// as each criterion finishes.
std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& options,
    const std::function<void(const CriterionResult&)>& on_result = {});

/// Runs a single criterion by number (1 .. 15).
CriterionResult run_criterion(int number, const AcceptanceOptions& options);

/// "PASS 01 quasi-nilpotency observed=... threshold=... | detail"
std::string format_line(const CriterionResult& r);

/// Report rows (status pass/fail) with wall_ms zeroed unless timed is set.
std::vector<CheckResult> to_check_results(const std::vector<CriterionResult>& results,
                                          std::uint64_t seed, bool timed);

} // namespace wienerlab::harness
