#include <wienerlab/harness/acceptance.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

// Runs the fifteen acceptance criteria with their pinned tolerances and
// prints one PASS/FAIL line per criterion. Exit status is 0 only when all pass.
int main(int argc, char** argv)
{
    wienerlab::harness::AcceptanceOptions options;
    if (argc > 1) {
        options.seed = std::stoull(argv[1]);
    }
    std::size_t passed = 0;
    const auto results = wienerlab::harness::run_acceptance(
        options, [&](const wienerlab::harness::CriterionResult& r) {
            std::cout << wienerlab::harness::format_line(r) << std::endl;
            passed += r.passed ? 1 : 0;
        });
    std::cout << passed << "/" << results.size() << " acceptance criteria passed (seed "
              << options.seed << ")" << std::endl;
    return passed == results.size() ? EXIT_SUCCESS : EXIT_FAILURE;
}
