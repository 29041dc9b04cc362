#pragma once

#include "wienerlab/harness/checks.hpp"
#include "wienerlab/harness/config.hpp"

#include <vector>

namespace wienerlab::harness {

struct ScenarioOutcome {
    std::vector<CheckResult> results;

    bool any_fail() const;
};

/// Runs the configured checks in order on the configured drift.
ScenarioOutcome run_scenario(const ScenarioConfig& config);

} // namespace wienerlab::harness
