#include <wienerlab/drifts.hpp>
#include <wienerlab/harness/acceptance.hpp>
#include <wienerlab/harness/checks.hpp>
#include <wienerlab/harness/config.hpp>
#include <wienerlab/harness/report.hpp>
#include <wienerlab/harness/scenario.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

using namespace wienerlab;
using namespace wienerlab::harness;
using nlohmann::json;

namespace {

json minimal_config()
{
    return json{{"scenario", "unit"},
                {"drift", {{"type", "bounded-sin"}, {"params", {{"b", 0.5}}}, {"inner", json::array()}}},
                {"n", 16},
                {"N", 200},
                {"seed", 4},
                {"checks", {"det2", "roundtrip", "normalization"}}};
}

std::vector<std::string> problems_of(const json& j)
{
    try {
        parse_config(j);
    } catch (const ConfigError& e) {
        return e.problems();
    }
    return {};
}

bool mentions(const std::vector<std::string>& problems, const std::string& needle)
{
    return std::any_of(problems.begin(), problems.end(),
                       [&](const std::string& p) { return p.find(needle) != std::string::npos; });
}

std::filesystem::path scratch_dir(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / ("wienerlab_test_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

} // namespace

TEST(Config, ParsesAndRoundTrips)
{
    const ScenarioConfig c = parse_config(minimal_config());
    EXPECT_EQ(c.scenario, "unit");
    EXPECT_EQ(c.drift.type, "bounded-sin");
    EXPECT_DOUBLE_EQ(c.drift.params.at("b"), 0.5);
    EXPECT_EQ(c.steps, 16u);
    EXPECT_EQ(c.paths, 200u);
    EXPECT_EQ(c.seed, 4u);
    EXPECT_EQ(c.checks.size(), 3u);
    EXPECT_EQ(parse_config(to_json(c)), c);
}

TEST(Config, NestedDriftSpecsRoundTrip)
{
    for (const DriftSpec& spec : catalog_specs()) {
        std::vector<std::string> problems;
        EXPECT_EQ(drift_spec_from_json(to_json(spec), "drift", problems), spec);
        EXPECT_TRUE(problems.empty());
    }
}

TEST(Config, MissingChecksMeansEveryCheck)
{
    json j = minimal_config();
    j.erase("checks");
    j["n"] = 64;
    EXPECT_EQ(parse_config(j).checks, supported_checks());
}

TEST(Config, CollectsEveryProblem)
{
    json j = minimal_config();
    j["n"] = 0;
    j["N"] = 1;
    j["checks"] = {"det2", "bogus"};
    j["surprise"] = true;
    const auto problems = problems_of(j);
    EXPECT_TRUE(mentions(problems, "n:"));
    EXPECT_TRUE(mentions(problems, "N:"));
    EXPECT_TRUE(mentions(problems, "bogus"));
    EXPECT_TRUE(mentions(problems, "surprise"));
}

TEST(Config, UnknownDriftListsSupportedTags)
{
    json j = minimal_config();
    j["drift"] = {{"type", "brownian-bridge"}};
    const auto problems = problems_of(j);
    ASSERT_FALSE(problems.empty());
    for (const std::string& tag : supported_drift_tags()) {
        EXPECT_TRUE(mentions(problems, tag)) << tag;
    }
}

TEST(Config, BadDriftShapesAndGridConstraints)
{
    json j = minimal_config();
    j["drift"] = {{"type", "ou"}, {"params", {{"a", "big"}}}};
    EXPECT_TRUE(mentions(problems_of(j), "expected a number"));

    j = minimal_config();
    j["drift"] = {{"type", "stopped"}, {"params", {{"level", 1.0}}}};
    EXPECT_FALSE(problems_of(j).empty());

    j = minimal_config();
    j["n"] = 6;
    j["checks"] = {"lsi"};
    EXPECT_TRUE(mentions(problems_of(j), "lsi"));

    j = minimal_config();
    j["scenario"] = "../escape";
    EXPECT_TRUE(mentions(problems_of(j), "scenario"));
}

TEST(Config, LoadReportsIoAndSyntaxErrors)
{
    const auto dir = scratch_dir("load");
    std::filesystem::create_directories(dir);
    EXPECT_THROW(load_config(dir / "missing.json"), ConfigError);
    std::ofstream(dir / "broken.json") << "{\"scenario\": ";
    EXPECT_THROW(load_config(dir / "broken.json"), ConfigError);
    std::ofstream(dir / "good.json") << minimal_config().dump();
    EXPECT_EQ(load_config(dir / "good.json").scenario, "unit");
    std::filesystem::remove_all(dir);
}

TEST(Config, ValidateCatchesOverrides)
{
    ScenarioConfig c = parse_config(minimal_config());
    c.paths = 1;
    EXPECT_THROW(validate(c), ConfigError);
    c.paths = 10;
    c.steps = 10;
    c.checks = {"cross-resolution"};
    EXPECT_THROW(validate(c), ConfigError);
}

TEST(Report, HeaderOnlyForNoResults)
{
    std::ostringstream os;
    write_csv(os, {});
    EXPECT_EQ(os.str(), csv_header() + "\n");
    EXPECT_EQ(csv_header(), "check_id,status,estimate,stderr,threshold,observed,n,N,seed,wall_ms");
}

TEST(Report, RowsUseEmptyCellsForMissingValues)
{
    CheckResult r;
    r.check_id = "lsi:W(0.5)*W(1),x";
    r.status = CheckStatus::fail;
    r.observed = 0.25;
    r.threshold = 0.125;
    r.n = 8;
    r.N = 10;
    r.seed = 3;
    std::ostringstream os;
    write_csv(os, {r});
    const std::string expected = csv_header() + "\n\"lsi:W(0.5)*W(1),x\",fail,,,0.125,0.25,8,10,3,0\n";
    EXPECT_EQ(os.str(), expected);

    const json j = results_json({r});
    EXPECT_EQ(j[0]["status"], "fail");
    EXPECT_TRUE(j[0]["estimate"].is_null());
    EXPECT_DOUBLE_EQ(j[0]["observed"].get<double>(), 0.25);
}

TEST(Report, WritesBothFilesAndRejectsUnwritableDirs)
{
    const auto dir = scratch_dir("reports");
    const ReportPaths p = write_reports(dir / "nested", "s", {}, json{{"results", json::array()}});
    EXPECT_TRUE(std::filesystem::exists(p.csv));
    EXPECT_TRUE(std::filesystem::exists(p.json));
    std::ofstream(dir / "plain_file") << "x";
    EXPECT_THROW(write_reports(dir / "plain_file" / "sub", "s", {}, json::object()), IoError);
    std::filesystem::remove_all(dir);
}

TEST(Checks, CompareTreatsNanAsFailure)
{
    EXPECT_EQ(compare(1.0, 1.0), CheckStatus::pass);
    EXPECT_EQ(compare(1.5, 1.0), CheckStatus::fail);
    EXPECT_EQ(compare(std::nan(""), 1.0), CheckStatus::fail);
    EXPECT_THROW(run_check("bogus", CheckContext{make_zero_drift(), TimeGrid(4), 10, 1, {}, {}}),
                 std::invalid_argument);
}

TEST(Scenario, PassesAndIsDeterministic)
{
    const ScenarioConfig c = parse_config(minimal_config());
    const ScenarioOutcome a = run_scenario(c);
    const ScenarioOutcome b = run_scenario(c);
    EXPECT_FALSE(a.any_fail());
    ASSERT_EQ(a.results.size(), 3u);
    std::ostringstream sa, sb;
    write_csv(sa, a.results);
    write_csv(sb, b.results);
    EXPECT_EQ(sa.str(), sb.str());
    for (const CheckResult& r : a.results) {
        EXPECT_EQ(r.wall_ms, 0.0);
        EXPECT_EQ(r.n, 16u);
        EXPECT_EQ(r.seed, 4u);
    }
    const json doc = report_json(a.results, c);
    EXPECT_EQ(parse_config(doc["config"]), c);
}

TEST(Scenario, ZeroToleranceProducesAFailingRow)
{
    json j = minimal_config();
    j["checks"] = {"roundtrip"};
    j["drift"] = {{"type", "ou"}, {"params", {{"a", 0.5}}}};
    j["tolerances"] = {{"roundtrip", 0.0}};
    const ScenarioOutcome o = run_scenario(parse_config(j));
    ASSERT_EQ(o.results.size(), 1u);
    EXPECT_EQ(o.results[0].status, CheckStatus::fail);
    EXPECT_TRUE(o.any_fail());
}

TEST(Acceptance, FastCriteriaPassAndZeroToleranceFails)
{
    EXPECT_EQ(acceptance_ids().size(), 15u);
    AcceptanceOptions opts;
    for (int number : {3, 4, 5, 10, 14}) {
        const CriterionResult r = run_criterion(number, opts);
        EXPECT_TRUE(r.passed) << format_line(r);
        EXPECT_EQ(r.number, number);
    }
    AcceptanceOptions strict;
    strict.tolerances = AcceptanceTolerances::zero();
    EXPECT_FALSE(run_criterion(3, strict).passed);
    EXPECT_THROW(run_criterion(99, opts), std::invalid_argument);
}
