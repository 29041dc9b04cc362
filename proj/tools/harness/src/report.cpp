#include "wienerlab/harness/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

namespace wienerlab::harness {

using nlohmann::json;

namespace {

std::string number(double x)
{
    if (std::isnan(x)) {
        return "";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json json_number(double x)
{
    if (std::isnan(x)) {
        return nullptr;
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    return x;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    return out + "\"";
}

} // namespace

std::string csv_header()
{
    return "check_id,status,estimate,stderr,threshold,observed,n,N,seed,wall_ms";
}

void write_csv(std::ostream& out, const std::vector<CheckResult>& results)
{
    out << csv_header() << '\n';
    for (const CheckResult& r : results) {
        out << csv_field(r.check_id) << ',' << to_string(r.status) << ',' << number(r.estimate)
            << ',' << number(r.std_error) << ',' << number(r.threshold) << ','
            << number(r.observed) << ',' << r.n << ',' << r.N << ',' << r.seed << ','
            << number(r.wall_ms) << '\n';
    }
}

json results_json(const std::vector<CheckResult>& results)
{
    json out = json::array();
    for (const CheckResult& r : results) {
        out.push_back({
            {"check_id", r.check_id},
            {"status", to_string(r.status)},
            {"estimate", json_number(r.estimate)},
            {"stderr", json_number(r.std_error)},
            {"threshold", json_number(r.threshold)},
            {"observed", json_number(r.observed)},
            {"n", r.n},
            {"N", r.N},
            {"seed", r.seed},
            {"wall_ms", json_number(r.wall_ms)},
            {"note", r.note},
        });
    }
    return out;
}

json report_json(const std::vector<CheckResult>& results, const ScenarioConfig& config)
{
    return {{"config", to_json(config)}, {"results", results_json(results)}};
}

ReportPaths write_reports(const std::filesystem::path& dir, const std::string& stem,
                          const std::vector<CheckResult>& results, const json& document)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    }
    ReportPaths paths{dir / (stem + ".csv"), dir / (stem + ".json")};
    {
        std::ofstream csv(paths.csv, std::ios::binary);
        if (!csv) {
            throw IoError("cannot write " + paths.csv.string());
        }
        write_csv(csv, results);
        if (!csv.flush()) {
            throw IoError("write failed for " + paths.csv.string());
        }
    }
    std::ofstream js(paths.json, std::ios::binary);
    if (!js) {
        throw IoError("cannot write " + paths.json.string());
    }
    js << document.dump(2) << '\n';
    if (!js.flush()) {
        throw IoError("write failed for " + paths.json.string());
    }
    return paths;
}

} // namespace wienerlab::harness
