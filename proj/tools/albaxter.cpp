// albaxter: verification suites, Baecklund sweeps, trajectories and kernel grids.
//
// Exit codes: 0 success / all checks pass, 1 a check or BT failed,
// 2 bad command line, config or input state.

#include <albaxter/classical.hpp>
#include <albaxter/cli.hpp>
#include <albaxter/sparse.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace albaxter;
using namespace albaxter::cli;
using nlohmann::json;

namespace {

struct Overrides {
    std::string config_path;
    std::optional<int> N, m, n_max;
    std::optional<std::string> alpha, eta, mu;
    bool complex_alpha = false;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol, newton_tol;
    std::optional<std::string> out, format;
};

void add_common(CLI::App* app, Overrides& o) {
    app->add_option("--config", o.config_path, "RunConfig JSON file")->check(CLI::ExistingFile);
    app->add_option("--N", o.N, "number of sites");
    app->add_option("--m", o.m, "number of Bethe roots");
    app->add_option("--alpha", o.alpha, "deformation alpha: x or re,im");
    app->add_option("--eta", o.eta, "deformation eta = 1/alpha - 1: x or re,im")->excludes("--alpha");
    app->add_flag("--complex-alpha", o.complex_alpha, "allow complex alpha with 0 < |alpha| < 1");
    app->add_option("--mu", o.mu, "Baecklund parameter: x or re,im");
    app->add_option("--nmax", o.n_max, "Fock truncation per site");
    app->add_option("--seed", o.seed, "seed for every random draw");
    app->add_option("--tol", o.tol, "tolerance override for exact-identity checks");
    app->add_option("--newton-tol", o.newton_tol, "Newton residual target");
    app->add_option("--out", o.out, "output file (stdout when absent)");
    app->add_option("--format", o.format, "json or csv");
}

json parse_complex_arg(const std::string& s, const char* name) {
    std::istringstream is(s);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(is >> re)) throw ConfigError(std::string("--") + name + ": expected x or re,im");
    if (is >> comma) {
        if (comma != ',' || !(is >> im)) throw ConfigError(std::string("--") + name + ": expected x or re,im");
    }
    if (is >> comma) throw ConfigError(std::string("--") + name + ": trailing characters");
    return im == 0.0 ? json(re) : json::array({re, im});
}

RunConfig resolve(const Overrides& o) {
    json j = json::object();
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        try {
            j = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
        if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    }
    if (o.N) j["N"] = *o.N;
    if (o.m) j["m"] = *o.m;
    if (o.n_max) j["n_max"] = *o.n_max;
    if (o.alpha) {
        j.erase("eta");
        j["alpha"] = parse_complex_arg(*o.alpha, "alpha");
    }
    if (o.eta) {
        j.erase("alpha");
        j["eta"] = parse_complex_arg(*o.eta, "eta");
    }
    if (o.complex_alpha) j["complex_alpha"] = true;
    if (o.mu) j["mu"] = parse_complex_arg(*o.mu, "mu");
    if (o.seed) j["seed"] = *o.seed;
    if (o.tol) j["tolerances"]["residual"] = *o.tol;
    if (o.newton_tol) j["tolerances"]["newton"] = *o.newton_tol;
    if (o.out) j["output_path"] = *o.out;
    if (o.format) j["format"] = *o.format;
    return run_config_from_json(j);
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file " + path);
    out << text;
}

std::optional<json> read_state(const std::string& path) {
    if (path.empty()) return std::nullopt;
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open state file " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("state file: ") + e.what());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ablowitz-Ladik chain: classical, Baecklund and quantum verification toolkit"};
    app.require_subcommand(1);

    Overrides ov;
    std::string suite, roots_csv, state_path;
    std::vector<double> sweep;
    bool no_canonicity = false, zero = false, no_timing = false;
    double dt = 0.01;
    int steps = 100, every = 1;
    KernelGridRequest grid;

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    add_common(verify, ov);
    verify->add_option("suite", suite, "classical | bt | quantum | bethe | baxter | all")
        ->required()
        ->check(CLI::IsMember(suite_names()));
    verify->add_option("--roots-csv", roots_csv, "write Bethe roots and residuals as CSV");
    verify->add_flag("--no-timing", no_timing, "omit the timing block from JSON reports");

    auto* bt = app.add_subcommand("bt", "apply the Baecklund transformation");
    add_common(bt, ov);
    bt->add_option("--state", state_path, "chain state JSON {N, q, r}")->check(CLI::ExistingFile);
    bt->add_option("--mu-sweep", sweep, "lo hi count: evenly spaced real mu values")->expected(3);
    bt->add_flag("--no-canonicity", no_canonicity, "skip the finite-difference canonicity check");

    auto* evolve = app.add_subcommand("evolve", "integrate the equations of motion with RK4");
    add_common(evolve, ov);
    evolve->add_option("--state", state_path, "chain state JSON {N, q, r}")->check(CLI::ExistingFile);
    evolve->add_option("--dt", dt, "time step");
    evolve->add_option("--steps", steps, "number of steps");
    evolve->add_option("--every", every, "emit every n-th step");
    evolve->add_flag("--zero", zero, "start from q = r = 0");

    auto* kgrid = app.add_subcommand("kernel-grid", "tabulate the single-site kernel rho on a real grid");
    add_common(kgrid, ov);
    kgrid->add_option("--rtilde", grid.rtilde_k, "r~_k");
    kgrid->add_option("--rtilde-prev", grid.rtilde_km1, "r~_{k-1}");
    kgrid->add_option("--r-lo", grid.r_lo);
    kgrid->add_option("--r-hi", grid.r_hi);
    kgrid->add_option("--points", grid.points);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    set_max_threads(threads_from_env());

    try {
        const RunConfig cfg = resolve(ov);
        if (verify->parsed()) {
            const Report rep = run_verify(suite, cfg);
            write_output(cfg.output_path, cfg.format == "csv" ? report_to_csv(rep)
                                                              : report_to_json(rep, !no_timing).dump(2) + "\n");
            if (!roots_csv.empty()) {
                const auto it = rep.artifacts.find("bethe.solve");
                write_output(roots_csv, roots_to_csv(it != rep.artifacts.end() ? *it : json::array()));
            }
            return rep.all_pass() ? 0 : 1;
        }
        if (bt->parsed()) {
            BtRequest req{cfg, read_state(state_path), {}, !no_canonicity};
            if (!sweep.empty()) {
                const int count = int(sweep[2]);
                if (count < 1 || double(count) != sweep[2]) throw ConfigError("--mu-sweep: count must be a positive integer");
                for (int i = 0; i < count; ++i)
                    req.mus.push_back(count == 1 ? sweep[0] : sweep[0] + (sweep[1] - sweep[0]) * i / (count - 1));
            }
            const json out = run_bt(req);
            write_output(cfg.output_path, out.dump(2) + "\n");
            for (const json& r : out["records"])
                if (r.contains("error")) return 1;
            return 0;
        }
        if (evolve->parsed()) {
            write_output(cfg.output_path, run_evolve({cfg, read_state(state_path), zero, dt, steps, every}));
            return 0;
        }
        grid.config = cfg;
        write_output(cfg.output_path, run_kernel_grid(grid));
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "albaxter: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "albaxter: invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "albaxter: " << e.what() << '\n';
        return 1;
    }
}
