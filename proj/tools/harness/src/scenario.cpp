#include "wienerlab/harness/scenario.hpp"

#include <wienerlab/drifts.hpp>

#include <algorithm>
#include <chrono>

namespace wienerlab::harness {

bool ScenarioOutcome::any_fail() const
{
    return std::any_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.status == CheckStatus::fail; });
}

ScenarioOutcome run_scenario(const ScenarioConfig& config)
{
    const CheckContext ctx{make_builtin(config.drift), TimeGrid(config.steps), config.paths,
                           config.seed, config.tolerances, config.options};
    ScenarioOutcome out;
    for (const std::string& id : config.checks) {
        const auto start = std::chrono::steady_clock::now();
        std::vector<CheckResult> rows = run_check(id, ctx);
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        for (CheckResult& r : rows) {
            r.wall_ms = config.record_timing ? ms : 0.0;
            out.results.push_back(std::move(r));
        }
    }
    return out;
}

} // namespace wienerlab::harness
