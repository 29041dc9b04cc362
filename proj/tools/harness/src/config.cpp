#include "wienerlab/harness/config.hpp"

#include "wienerlab/harness/checks.hpp"

#include <wienerlab/drifts.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace wienerlab::harness {

using nlohmann::json;

namespace {

std::string join_lines(const std::vector<std::string>& lines)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        os << (i ? "\n" : "") << lines[i];
    }
    return os.str();
}

void reject_unknown_keys(const json& j, const std::set<std::string>& known,
                         const std::string& where, std::vector<std::string>& problems)
{
    for (const auto& item : j.items()) {
        if (!known.count(item.key())) {
            problems.push_back(where + ": unknown key \"" + item.key() + "\"");
        }
    }
}

std::map<std::string, double> number_map(const json& j, const std::string& where,
                                         std::vector<std::string>& problems)
{
    std::map<std::string, double> out;
    if (!j.is_object()) {
        problems.push_back(where + ": expected an object of numbers");
        return out;
    }
    for (const auto& item : j.items()) {
        if (!item.value().is_number()) {
            problems.push_back(where + "." + item.key() + ": expected a number");
            continue;
        }
        out[item.key()] = item.value().get<double>();
    }
    return out;
}

template <class T>
std::optional<T> unsigned_field(const json& j, const char* key, std::uint64_t minimum,
                                std::vector<std::string>& problems)
{
    if (!j.contains(key)) {
        return std::nullopt;
    }
    const json& v = j.at(key);
    if (v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0)) {
        const auto x = v.get<std::uint64_t>();
        if (x < minimum) {
            problems.push_back(std::string(key) + ": must be >= " + std::to_string(minimum));
            return std::nullopt;
        }
        return static_cast<T>(x);
    }
    problems.push_back(std::string(key) + ": expected a non-negative integer");
    return std::nullopt;
}

void check_semantics(const ScenarioConfig& c, std::vector<std::string>& problems,
                     bool build_drift = true)
{
    if (c.steps < 1) {
        problems.push_back("n: must be >= 1");
    }
    if (c.paths < 2) {
        problems.push_back("N: must be >= 2");
    }
    const auto& known = supported_checks();
    for (const std::string& id : c.checks) {
        if (std::find(known.begin(), known.end(), id) == known.end()) {
            problems.push_back("checks: unknown check id \"" + id + "\"");
        } else if (c.steps >= 1) {
            if (auto p = grid_problem(id, c.steps)) {
                problems.push_back("checks: " + *p);
            }
        }
    }
    if (!build_drift) {
        return;
    }
    try {
        make_builtin(c.drift);
    } catch (const std::invalid_argument& e) {
        problems.push_back(std::string("drift: ") + e.what());
    }
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join_lines(problems)), problems_(std::move(problems))
{}

json to_json(const DriftSpec& spec)
{
    json j;
    j["type"] = spec.type;
    j["params"] = json::object();
    for (const auto& [k, v] : spec.params) {
        j["params"][k] = v;
    }
    j["inner"] = json::array();
    for (const DriftSpec& inner : spec.inner) {
        j["inner"].push_back(to_json(inner));
    }
    return j;
}

DriftSpec drift_spec_from_json(const json& j, const std::string& where,
                               std::vector<std::string>& problems)
{
    DriftSpec spec;
    if (!j.is_object()) {
        problems.push_back(where + ": expected an object with \"type\"");
        return spec;
    }
    reject_unknown_keys(j, {"type", "params", "inner"}, where, problems);
    if (!j.contains("type") || !j.at("type").is_string()) {
        problems.push_back(where + ".type: expected a string");
    } else {
        spec.type = j.at("type").get<std::string>();
    }
    if (j.contains("params")) {
        spec.params = number_map(j.at("params"), where + ".params", problems);
    }
    if (j.contains("inner")) {
        const json& inner = j.at("inner");
        if (!inner.is_array()) {
            problems.push_back(where + ".inner: expected an array");
        } else {
            for (std::size_t k = 0; k < inner.size(); ++k) {
                spec.inner.push_back(drift_spec_from_json(
                    inner[k], where + ".inner[" + std::to_string(k) + "]", problems));
            }
        }
    }
    return spec;
}

json to_json(const ScenarioConfig& c)
{
    json j;
    j["scenario"] = c.scenario;
    j["drift"] = to_json(c.drift);
    j["n"] = c.steps;
    j["N"] = c.paths;
    j["seed"] = c.seed;
    j["checks"] = c.checks;
    j["tolerances"] = json::object();
    for (const auto& [k, v] : c.tolerances) {
        j["tolerances"][k] = v;
    }
    j["options"] = json::object();
    for (const auto& [k, v] : c.options) {
        j["options"][k] = v;
    }
    j["output_dir"] = c.output_dir;
    j["record_timing"] = c.record_timing;
    return j;
}

ScenarioConfig parse_config(const json& j)
{
    std::vector<std::string> problems;
    ScenarioConfig c;
    if (!j.is_object()) {
        throw ConfigError({"config: expected a JSON object"});
    }
    reject_unknown_keys(j,
                        {"scenario", "drift", "n", "N", "seed", "checks", "tolerances",
                         "options", "output_dir", "record_timing"},
                        "config", problems);

    if (!j.contains("scenario") || !j.at("scenario").is_string() ||
        j.at("scenario").get<std::string>().empty()) {
        problems.push_back("scenario: expected a non-empty string");
    } else {
        c.scenario = j.at("scenario").get<std::string>();
        if (c.scenario.find_first_of("/\\") != std::string::npos) {
            problems.push_back("scenario: must not contain path separators");
        }
    }
    bool drift_parsed = false;
    if (!j.contains("drift")) {
        problems.push_back("drift: missing");
    } else {
        const std::size_t before = problems.size();
        c.drift = drift_spec_from_json(j.at("drift"), "drift", problems);
        drift_parsed = problems.size() == before;
    }
    if (auto n = unsigned_field<std::size_t>(j, "n", 1, problems)) {
        c.steps = *n;
    }
    if (auto n = unsigned_field<std::size_t>(j, "N", 2, problems)) {
        c.paths = *n;
    }
    if (auto s = unsigned_field<std::uint64_t>(j, "seed", 0, problems)) {
        c.seed = *s;
    }
    if (j.contains("checks")) {
        const json& checks = j.at("checks");
        if (!checks.is_array()) {
            problems.push_back("checks: expected an array of check ids");
        } else {
            for (const json& id : checks) {
                if (!id.is_string()) {
                    problems.push_back("checks: entries must be strings");
                } else {
                    c.checks.push_back(id.get<std::string>());
                }
            }
        }
    } else {
        c.checks = supported_checks();
    }
    if (j.contains("tolerances")) {
        c.tolerances = number_map(j.at("tolerances"), "tolerances", problems);
    }
    if (j.contains("options")) {
        c.options = number_map(j.at("options"), "options", problems);
    }
    if (j.contains("output_dir")) {
        if (!j.at("output_dir").is_string()) {
            problems.push_back("output_dir: expected a string");
        } else {
            c.output_dir = j.at("output_dir").get<std::string>();
        }
    }
    if (j.contains("record_timing")) {
        if (!j.at("record_timing").is_boolean()) {
            problems.push_back("record_timing: expected true or false");
        } else {
            c.record_timing = j.at("record_timing").get<bool>();
        }
    }
    check_semantics(c, problems, drift_parsed);
    if (!problems.empty()) {
        throw ConfigError(std::move(problems));
    }
    return c;
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError({"cannot read config file " + path.string()});
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError({path.string() + ": malformed JSON: " + e.what()});
    }
    return parse_config(j);
}

void validate(const ScenarioConfig& config)
{
    std::vector<std::string> problems;
    check_semantics(config, problems);
    if (!problems.empty()) {
        throw ConfigError(std::move(problems));
    }
}

} // namespace wienerlab::harness
