#include <albaxter/cli.hpp>
#include <albaxter/qcalc.hpp>

#include <cmath>
#include <cstdlib>
#include <set>

namespace albaxter::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key)) throw ConfigError(where + ": unknown field \"" + key + "\"");
}

int get_int(const json& j, const std::string& key) {
    if (!j.is_number_integer()) throw ConfigError("\"" + key + "\" must be an integer");
    return j.get<int>();
}

double get_double(const json& j, const std::string& key) {
    if (!j.is_number()) throw ConfigError("\"" + key + "\" must be a number");
    return j.get<double>();
}

cplx get_complex(const json& j, const std::string& key) {
    if (j.is_number()) return j.get<double>();
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ConfigError("\"" + key + "\" must be a number or an [re, im] pair");
}

json complex_json(cplx z) {
    if (z.imag() == 0.0) return z.real();
    return json::array({z.real(), z.imag()});
}

} // namespace

RunConfig run_config_from_json(const json& j) {
    reject_unknown(j,
                   {"N", "m", "alpha", "eta", "complex_alpha", "mu", "n_max", "tolerances", "seed", "sample_counts",
                    "output_path", "format"},
                   "config");
    RunConfig c;
    if (j.contains("N")) c.N = get_int(j["N"], "N");
    if (j.contains("m")) c.m = get_int(j["m"], "m");
    if (j.contains("complex_alpha")) {
        if (!j["complex_alpha"].is_boolean()) throw ConfigError("\"complex_alpha\" must be a boolean");
        c.complex_alpha = j["complex_alpha"].get<bool>();
    }
    if (j.contains("alpha") && j.contains("eta")) throw ConfigError("give either \"alpha\" or \"eta\", not both");
    if (j.contains("alpha")) c.alpha = get_complex(j["alpha"], "alpha");
    if (j.contains("eta")) {
        const cplx eta = get_complex(j["eta"], "eta");
        if (eta == cplx(-1.0)) throw ConfigError("\"eta\" = -1 has no alpha");
        c.alpha = 1.0 / (1.0 + eta);
    }
    if (j.contains("mu")) c.mu = get_complex(j["mu"], "mu");
    if (j.contains("n_max")) c.n_max = get_int(j["n_max"], "n_max");
    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        reject_unknown(t, {"newton", "residual"}, "tolerances");
        if (t.contains("newton")) c.tolerances.newton = get_double(t["newton"], "tolerances.newton");
        if (t.contains("residual") && !t["residual"].is_null())
            c.tolerances.residual = get_double(t["residual"], "tolerances.residual");
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw ConfigError("\"seed\" must be a non-negative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("sample_counts")) {
        const json& s = j["sample_counts"];
        reject_unknown(s, {"states", "lambdas", "nus", "points"}, "sample_counts");
        if (s.contains("states")) c.sample_counts.states = get_int(s["states"], "sample_counts.states");
        if (s.contains("lambdas")) c.sample_counts.lambdas = get_int(s["lambdas"], "sample_counts.lambdas");
        if (s.contains("nus")) c.sample_counts.nus = get_int(s["nus"], "sample_counts.nus");
        if (s.contains("points")) c.sample_counts.points = get_int(s["points"], "sample_counts.points");
    }
    if (j.contains("output_path")) {
        if (!j["output_path"].is_string()) throw ConfigError("\"output_path\" must be a string");
        c.output_path = j["output_path"].get<std::string>();
    }
    if (j.contains("format")) {
        if (!j["format"].is_string()) throw ConfigError("\"format\" must be a string");
        c.format = j["format"].get<std::string>();
    }
    validate(c);
    return c;
}

void validate(const RunConfig& c) {
    if (c.N < 1 || c.N > 16) throw ConfigError("N must be in [1, 16]");
    if (c.m < 0) throw ConfigError("m must be >= 0");
    if (c.n_max < 1) throw ConfigError("n_max must be >= 1");
    try {
        QParam(c.alpha, c.complex_alpha);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    if (c.mu == cplx(0.0) || !std::isfinite(c.mu.real()) || !std::isfinite(c.mu.imag()))
        throw ConfigError("mu must be finite and nonzero");
    if (!(c.tolerances.newton > 0.0)) throw ConfigError("tolerances.newton must be > 0");
    if (c.tolerances.residual && !(*c.tolerances.residual > 0.0)) throw ConfigError("tolerances.residual must be > 0");
    const SampleCounts& s = c.sample_counts;
    if (s.states < 1 || s.lambdas < 1 || s.nus < 1 || s.points < 1) throw ConfigError("sample counts must be >= 1");
    if (c.format != "json" && c.format != "csv") throw ConfigError("format must be \"json\" or \"csv\"");
}

json to_json(const RunConfig& c) {
    return json{{"N", c.N},
                {"m", c.m},
                {"alpha", complex_json(c.alpha)},
                {"complex_alpha", c.complex_alpha},
                {"mu", complex_json(c.mu)},
                {"n_max", c.n_max},
                {"tolerances",
                 {{"newton", c.tolerances.newton},
                  {"residual", c.tolerances.residual ? json(*c.tolerances.residual) : json(nullptr)}}},
                {"seed", c.seed},
                {"sample_counts",
                 {{"states", c.sample_counts.states},
                  {"lambdas", c.sample_counts.lambdas},
                  {"nus", c.sample_counts.nus},
                  {"points", c.sample_counts.points}}},
                {"output_path", c.output_path},
                {"format", c.format}};
}

int threads_from_env() {
    const char* v = std::getenv("AL_BAXTER_THREADS");
    if (!v || !*v) return 0;
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (*end != '\0' || n < 1 || n > 4096) return 0;
    return int(n);
}

} // namespace albaxter::cli
