#include <albaxter/cli.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace albaxter::cli {

using nlohmann::json;

namespace {

std::string num(double x) {
    if (std::isnan(x)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// RFC 4180 quoting.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

} // namespace

json report_to_json(const Report& r, bool include_timing) {
    json cfg = to_json(r.config);
    cfg.erase("output_path");  // where a report goes is not part of its content
    cfg.erase("format");
    json checks = json::array(), timing = json::object();
    for (const CheckRecord& c : r.checks) {
        json j{{"check_id", c.check_id},
               {"params", c.params},
               {"residual", std::isfinite(c.residual) ? json(c.residual) : json(nullptr)},
               {"tolerance", c.tolerance},
               {"pass", c.pass}};
        if (!c.error.empty()) j["error"] = c.error;
        checks.push_back(std::move(j));
        timing[c.check_id] = c.wall_time;
    }
    json out{{"schema", kReportSchema}, {"suite", r.suite}, {"config", cfg},
             {"all_pass", r.all_pass()}, {"checks", checks}, {"artifacts", r.artifacts}};
    if (include_timing) out["timing"] = timing;
    return out;
}

std::string report_to_csv(const Report& r) {
    std::ostringstream os;
    os << "# " << kReportCsvSchema << '\n' << "check_id,residual,tolerance,pass,error,params\n";
    for (const CheckRecord& c : r.checks)
        os << csv_field(c.check_id) << ',' << num(c.residual) << ',' << num(c.tolerance) << ','
           << (c.pass ? "true" : "false") << ',' << csv_field(c.error) << ',' << csv_field(c.params.dump()) << '\n';
    return os.str();
}

std::string roots_to_csv(const json& roots) {
    std::ostringstream os;
    os << "# " << kRootsSchema << '\n' << "k,re,im,residual\n";
    for (const json& r : roots)
        os << r.at("k").get<std::size_t>() << ',' << num(r.at("root")[0].get<double>()) << ','
           << num(r.at("root")[1].get<double>()) << ',' << num(r.at("residual").get<double>()) << '\n';
    return os.str();
}

} // namespace albaxter::cli
