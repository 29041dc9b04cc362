#include <wienerlab/drifts.hpp>
#include <wienerlab/harness/acceptance.hpp>
#include <wienerlab/harness/config.hpp>
#include <wienerlab/harness/report.hpp>
#include <wienerlab/harness/scenario.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace wh = wienerlab::harness;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct RunArgs {
    std::string config_path;
    std::optional<std::string> out;
    std::optional<std::size_t> paths;
    std::optional<std::size_t> steps;
    std::optional<std::uint64_t> seed;
    bool timing = false;
};

struct AcceptArgs {
    std::uint64_t seed = 1;
    bool zero_tolerance = false;
    std::optional<std::string> out;
    std::optional<int> only;
    bool timing = false;
};

int run(const RunArgs& args)
{
    wh::ScenarioConfig config;
    try {
        config = wh::load_config(args.config_path);
        if (args.out) {
            config.output_dir = *args.out;
        }
        if (args.paths) {
            config.paths = *args.paths;
        }
        if (args.steps) {
            config.steps = *args.steps;
        }
        if (args.seed) {
            config.seed = *args.seed;
        }
        config.record_timing = config.record_timing || args.timing;
        wh::validate(config);
    } catch (const wh::ConfigError& e) {
        for (const std::string& line : e.problems()) {
            std::cerr << "error: " << line << '\n';
        }
        return kExitConfig;
    }

    const wh::ScenarioOutcome outcome = wh::run_scenario(config);
    try {
        const auto paths = wh::write_reports(config.output_dir, config.scenario, outcome.results,
                                             wh::report_json(outcome.results, config));
        std::cout << "wrote " << paths.csv.string() << " and " << paths.json.string() << '\n';
    } catch (const wh::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    std::size_t pass = 0, fail = 0, info = 0;
    for (const wh::CheckResult& r : outcome.results) {
        switch (r.status) {
        case wh::CheckStatus::pass:
            ++pass;
            break;
        case wh::CheckStatus::fail:
            ++fail;
            std::cout << "fail: " << r.check_id << '\n';
            break;
        case wh::CheckStatus::info:
            ++info;
            break;
        }
    }
    std::cout << config.scenario << ": " << pass << " pass, " << fail << " fail, " << info
              << " info\n";
    return outcome.any_fail() ? kExitFail : kExitPass;
}

int accept(const AcceptArgs& args)
{
    wh::AcceptanceOptions options;
    options.seed = args.seed;
    if (args.zero_tolerance) {
        options.tolerances = wh::AcceptanceTolerances::zero();
    }
    std::vector<wh::CriterionResult> results;
    const auto print = [](const wh::CriterionResult& r) {
        std::cout << wh::format_line(r) << std::endl;
    };
    if (args.only) {
        results.push_back(wh::run_criterion(*args.only, options));
        print(results.back());
    } else {
        results = wh::run_acceptance(options, print);
    }
    std::size_t passed = 0;
    for (const auto& r : results) {
        passed += r.passed ? 1 : 0;
    }
    std::cout << passed << "/" << results.size() << " criteria passed (seed " << args.seed
              << (args.zero_tolerance ? ", zero tolerance" : "") << ")\n";

    if (args.out) {
        const auto rows = wh::to_check_results(results, args.seed, args.timing);
        nlohmann::json doc{{"seed", args.seed},
                           {"zero_tolerance", args.zero_tolerance},
                           {"results", wh::results_json(rows)}};
        try {
            wh::write_reports(*args.out, "acceptance", rows, doc);
        } catch (const wh::IoError& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitConfig;
        }
    }
    return passed == results.size() ? kExitPass : kExitFail;
}

int list_drifts()
{
    for (const wienerlab::DriftSpec& spec : wienerlab::catalog_specs()) {
        std::cout << spec.type << '\t' << wh::to_json(spec).dump() << '\n';
    }
    return kExitPass;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Adapted perturbations of identity on discretized Wiener space"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "Run the checks of a scenario config");
    run_cmd->add_option("config", run_args.config_path, "Scenario config (JSON)")->required();
    run_cmd->add_option("--out", run_args.out, "Output directory for the reports");
    run_cmd->add_option("--paths", run_args.paths, "Override N, the number of paths")
        ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
    run_cmd->add_option("--steps", run_args.steps, "Override n, the number of grid steps")
        ->check(CLI::PositiveNumber);
    run_cmd->add_option("--seed", run_args.seed, "Override the seed");
    run_cmd->add_flag("--timing", run_args.timing, "Record wall_ms (reports stop being byte-stable)");

    AcceptArgs accept_args;
    auto* accept_cmd = app.add_subcommand("accept", "Run the acceptance suite");
    accept_cmd->add_option("--seed", accept_args.seed, "Seed for every criterion");
    accept_cmd->add_flag("--zero-tolerance", accept_args.zero_tolerance,
                         "Force every tolerance to 0 (the suite must then fail)");
    accept_cmd->add_option("--out", accept_args.out, "Also write acceptance.csv and .json here");
    accept_cmd->add_option("--only", accept_args.only, "Run a single criterion (1-15)")
        ->check(CLI::Range(1, 15));
    accept_cmd->add_flag("--timing", accept_args.timing, "Record wall_ms in the written reports");

    app.add_subcommand("list-drifts", "List drift tags with a representative spec");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitPass : kExitConfig;
    }

    try {
        if (*run_cmd) {
            return run(run_args);
        }
        if (*accept_cmd) {
            return accept(accept_args);
        }
        return list_drifts();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}
