#pragma once

// Configuration, verification suites and report assembly behind the
// command-line tool. Kept in the library so tests can drive it directly.

#include <albaxter/core.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace albaxter::cli {

inline constexpr const char* kReportSchema = "albaxter.report/1";
inline constexpr const char* kReportCsvSchema = "albaxter.report.csv/1";
inline constexpr const char* kBtSchema = "albaxter.bt/1";
inline constexpr const char* kTrajectorySchema = "albaxter.trajectory.csv/1";
inline constexpr const char* kRootsSchema = "albaxter.roots.csv/1";
inline constexpr const char* kKernelGridSchema = "albaxter.kernel-grid.csv/1";

/// Malformed or out-of-range configuration (exit status 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Tolerances {
    double newton = 1e-12;
    /// When set, replaces the built-in tolerance of every exact-identity check
    /// (finite-difference, quadrature and order checks keep their own).
    std::optional<double> residual;
};

struct SampleCounts {
    int states = 3;   ///< random phase-space states per classical/BT check
    int lambdas = 8;  ///< spectral parameters per identity
    int nus = 16;     ///< nu samples for the q-difference identity
    int points = 8;   ///< function-space sample points
};

struct RunConfig {
    int N = 2;
    int m = 1;
    cplx alpha = 0.5;            ///< JSON: number, or [re, im] with complex_alpha
    bool complex_alpha = false;
    cplx mu = 1.3;               ///< JSON: number or [re, im]
    int n_max = 5;
    Tolerances tolerances;
    std::uint64_t seed = 7;
    SampleCounts sample_counts;
    std::string output_path;
    std::string format = "json";
};

/// Throws ConfigError on unknown keys, wrong types or invalid values.
/// Missing keys keep their defaults. "eta" may replace "alpha" (not both).
RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& c);
/// Throws ConfigError.
void validate(const RunConfig& c);

struct CheckRecord {
    std::string check_id;
    nlohmann::json params;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string error;  ///< set when the check threw instead of producing a residual
    double wall_time = 0.0;
};

struct Report {
    std::string suite;
    RunConfig config;
    std::vector<CheckRecord> checks;
    nlohmann::json artifacts = nlohmann::json::object();
    bool all_pass() const;
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"classical", "bt", "quantum", "bethe", "baxter", "all"};
    return names;
}

/// Runs the named suite. Checks execute concurrently; records keep a fixed order.
/// Throws ConfigError for an unknown suite.
Report run_verify(const std::string& suite, const RunConfig& config);

/// Report as JSON. Wall times are gathered under "timing" so that the rest of
/// the document is a deterministic function of (config, seed, version).
nlohmann::json report_to_json(const Report& r, bool include_timing = true);
std::string report_to_csv(const Report& r);
/// k, Re lambda_k, Im lambda_k, residual
std::string roots_to_csv(const nlohmann::json& roots);

// --- Backlund driver ------------------------------------------------------

struct BtRequest {
    RunConfig config;
    std::optional<nlohmann::json> state;   ///< JSON state; random state from the seed otherwise
    std::vector<double> mus;                ///< one record per mu
    bool canonicity = true;
};

/// Throws ConfigError for invalid input states (with the reason).
nlohmann::json run_bt(const BtRequest& req);

// --- Trajectories ---------------------------------------------------------

struct EvolveRequest {
    RunConfig config;
    std::optional<nlohmann::json> state;
    bool zero_state = false;
    double dt = 0.01;
    int steps = 100;
    int every = 1;  ///< emit every n-th step
};

/// CSV: t, Re/Im q_k, Re/Im r_k, Re/Im H_0..H_N, Re/Im det, drift.
std::string run_evolve(const EvolveRequest& req);

// --- Kernel grid ------------------------------------------------------------

struct KernelGridRequest {
    RunConfig config;
    double rtilde_k = 2.0;
    double rtilde_km1 = 1.7;
    double r_lo = -0.9;
    double r_hi = 0.9;
    int points = 41;
};

/// CSV: r, Re/Im rho_k, and the relative functional-equation residual.
std::string run_kernel_grid(const KernelGridRequest& req);

/// Thread cap from AL_BAXTER_THREADS (0 if unset or invalid).
int threads_from_env();

} // namespace albaxter::cli
